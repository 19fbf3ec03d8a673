#pragma once
// Commutative model of the quantum space: series over position (x, t),
// momentum (p) and a second position copy (y), star products, conjugation,
// metric and canonical text.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qkg/coeffring.hpp"

namespace qkg {

enum Var : int { kXP, kX3, kXM, kT, kPP, kP3, kPM, kYP, kY3, kYM, kNumVars };
const char* var_name(int v);

// Exponent vector packed 6 bits per variable, kXP most significant.
using Key = std::uint64_t;
constexpr int kKeyBits = 6;
constexpr int kKeyMax = (1 << kKeyBits) - 1;
constexpr int key_shift(int v) { return kKeyBits * (kNumVars - 1 - v); }
inline int key_exp(Key k, int v) { return int((k >> key_shift(v)) & kKeyMax); }
inline Key key_var(int v, int e = 1) { return Key(e) << key_shift(v); }
inline Key key_set(Key k, int v, int e) {
  return (k & ~(Key(kKeyMax) << key_shift(v))) | (Key(e) << key_shift(v));
}
Key key_make(const std::array<int, kNumVars>& e);

// Spatial triples (+, 3, -) of the three noncommutative charts.
enum Chart : int { kChartX, kChartP, kChartY, kNumCharts };
constexpr std::array<int, 3> chart_vars(int ch) {
  return ch == kChartX ? std::array<int, 3>{kXP, kX3, kXM}
         : ch == kChartP ? std::array<int, 3>{kPP, kP3, kPM}
                         : std::array<int, 3>{kYP, kY3, kYM};
}

// Degree groups used for truncation bookkeeping. kGE is the degree in the
// charge symbol e carried inside coefficients.
enum Group : int { kGX, kGT, kGP, kGY, kGXY, kGE, kNumGroups };
constexpr int kInf = 1 << 28;
int key_degree(Key k, int group);  // not defined for kGE

// Error region of a truncated series: the union over groups g of
// {degree_g >= b[g]}. Terms outside it are exact.
struct Box {
  std::array<int, kNumGroups> b;
  Box() { b.fill(kInf); }
  bool exact() const;
  bool in_error(Key k) const;  // ignores kGE
  Box meet(const Box& o) const;  // union of error regions
  Box shifted(int group, int delta) const;
  bool operator==(const Box& o) const { return b == o.b; }
};

class Series {
 public:
  using Term = std::pair<Key, Scalar>;

  Series() = default;
  Series(const Scalar& c);
  Series(long c) : Series(Scalar(c)) {}
  static Series monomial(Key k, const Scalar& c = Scalar(1));
  static Series var(int v, int e = 1) { return monomial(key_var(v, e)); }
  static Series from_terms(std::vector<Term> t, Box box = Box());

  const std::vector<Term>& terms() const { return t_; }
  const Box& box() const { return box_; }
  void set_box(const Box& b) { box_ = b; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  Scalar coefficient(Key k) const;
  // lowest degree of present terms in a group (kInf when empty)
  int min_degree(int group) const;
  int max_degree(int group) const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  Series scaled(const Scalar& c) const;
  // commutative (pointwise) product
  friend Series operator*(const Series& a, const Series& b);
  // term equality (boxes not compared)
  bool operator==(const Series& o) const;
  bool operator!=(const Series& o) const { return !(*this == o); }

  // keep terms with group degree <= max; the box records the cut
  Series truncated(int group, int max) const;
  // drop terms lying in the error region
  Series pruned() const;
  // apply f to every coefficient; box kept
  template <class F>
  Series map_coefficients(F&& f) const {
    std::vector<Term> t;
    t.reserve(t_.size());
    for (auto& [k, c] : t_) t.emplace_back(k, f(c));
    return from_terms(std::move(t), box_);
  }

  std::string str() const;

 private:
  std::vector<Term> t_;  // ascending keys, nonzero coefficients
  Box box_;
};

// Box of a product whose degrees add in every group.
Box product_box(const Series& a, const Series& b);

enum class Ordering { kStandard, kReversed };

// Star product. x, p and y charts each carry their own copy of the
// quantum-space relations; t and the central symbols commute with all.
Series star(const Series& f, const Series& g, Ordering ord = Ordering::kStandard);
inline Series star_multiply(const Series& f, const Series& g, Ordering ord = Ordering::kStandard) {
  return star(f, g, ord);
}

Series conjugate(const Series& f);
Series swap_pm(const Series& f);           // exchange + and - in every chart
Series subst_q_inverse(const Series& f);   // q -> 1/q in all coefficients
Series classical_limit(const Series& f);   // q -> 1, PoleError names the term

// Metric over index values 0:'+', 1:'3', 2:'-'.
Scalar metric_lower(int a, int b);  // g_{AB}
Scalar metric_upper(int a, int b);  // g^{AB}
using Family = std::array<Series, 3>;
Family lower_index(const Family& v);
Family raise_index(const Family& v);
// sum g_{AB} a^A (*) b^B
Series metric_contract(const Family& a, const Family& b, Ordering ord = Ordering::kStandard);
// x_A with lowered index on the given chart: x_+ = -q x^-, x_3 = x^3, x_- = -q^{-1} x^+
Series lowered_coordinate(int a, int chart = kChartX);
Series upper_coordinate(int a, int chart = kChartX);
const char* index_name(int a);

// Residual classification against the truncation box.
enum class Verdict { kExactZero, kBoundaryOnly, kViolation };
const char* verdict_name(Verdict v);
struct Classification {
  Verdict verdict = Verdict::kExactZero;
  std::size_t residual_terms = 0;
  std::vector<std::string> offending;  // canonical text of sub-boundary terms
};
Classification classify(const Series& residual, std::size_t max_offending = 8);

Series parse_series(const std::string& text);
std::string term_str(Key k, const Scalar& c);

}  // namespace qkg
