#pragma once
// Exact coefficient field: fractions of Laurent polynomials in the central
// symbols q, c, M (= mc), E and the charge e over the Gaussian rationals.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkg {

// Gaussian rational re + i*im.
struct GQ {
  mpq_class re, im;

  GQ() = default;
  GQ(long r) : re(r), im(0) {}
  GQ(const mpq_class& r, const mpq_class& i = 0) : re(r), im(i) {}

  static GQ I() { return GQ(0, 1); }
  static GQ frac(long n, long d) {
    mpq_class r(n, d);
    r.canonicalize();
    return GQ(r);
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GQ operator-() const { return GQ(-re, -im); }
  GQ& operator+=(const GQ& o) { re += o.re; im += o.im; return *this; }
  GQ& operator-=(const GQ& o) { re -= o.re; im -= o.im; return *this; }
  GQ& operator*=(const GQ& o);
  GQ& operator/=(const GQ& o) { return *this *= o.inverse(); }
  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  bool operator==(const GQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GQ& o) const { return !(*this == o); }

  GQ inverse() const;
  GQ conj() const { return GQ(re, -im); }
  std::string str() const;
};

enum Sym : int { kSymQ = 0, kSymC, kSymM, kSymE, kSymCharge, kNumSyms };
const char* sym_name(int s);

// Packed Laurent monomial in the symbols. 12 bits per symbol, biased by 2048,
// q in the most significant field so integer order is lex order with q first.
using Mono = std::uint64_t;
constexpr int kMonoBits = 12;
constexpr int kMonoBias = 2048;

constexpr Mono mono_field(int s, int e) {
  return Mono(e + kMonoBias) << (kMonoBits * (kNumSyms - 1 - s));
}
constexpr Mono kMonoOne = mono_field(0, 0) | mono_field(1, 0) | mono_field(2, 0) |
                          mono_field(3, 0) | mono_field(4, 0);
inline int mono_exp(Mono m, int s) {
  return int((m >> (kMonoBits * (kNumSyms - 1 - s))) & 0xfff) - kMonoBias;
}
inline Mono mono_mul(Mono a, Mono b) { return a + b - kMonoOne; }
inline Mono mono_div(Mono a, Mono b) { return a - b + kMonoOne; }
Mono mono_make(const std::array<int, kNumSyms>& e);
inline Mono mono_sym(int s, int e) { return kMonoOne - mono_field(s, 0) + mono_field(s, e); }

// Sparse Laurent polynomial, terms sorted by descending monomial.
class Poly {
 public:
  struct Term {
    Mono m;
    GQ c;
  };

  Poly() = default;
  Poly(const GQ& c);
  Poly(long c) : Poly(GQ(c)) {}
  static Poly monomial(Mono m, const GQ& c = GQ(1));
  static Poly sym(int s, int e = 1) { return monomial(mono_sym(s, e)); }
  static Poly from_terms(std::vector<Term> t);  // sorts and merges

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == kMonoOne); }
  std::size_t size() const { return t_.size(); }
  const Term& lead() const { return t_.front(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const GQ& c) const;
  Poly shifted(Mono m) const;  // multiply by a monomial
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  int min_exp(int s) const;
  int max_exp(int s) const;
  bool depends_on(int s) const;
  bool univariate_in(int s) const;  // no other symbol occurs

  // monomial content (componentwise minimum exponents)
  Mono content() const;
  // exact division by f; f must be a polynomial with zero content and monic
  // leading term. Returns nullopt when f does not divide *this.
  std::optional<Poly> divide_exact(const Poly& f) const;

  Poly conj() const;
  Poly subst_inverse(int s) const;    // s -> s^{-1}
  Poly eval_at_one(int s) const;      // s -> 1
  Poly low_part(int s, int bound) const;  // terms with exponent of s < bound

  std::string str() const;

 private:
  std::vector<Term> t_;
};

struct Factor;

// Reduced fraction num / prod f^k. Denominator factors are normalized
// polynomials (zero monomial content, monic) registered in a global table;
// numerators absorb all monomial and constant content.
class Scalar {
 public:
  using Den = std::vector<std::pair<const Factor*, int>>;

  Scalar() = default;
  Scalar(long c) : num_(c) {}
  Scalar(const GQ& c) : num_(c) {}
  Scalar(const Poly& p) : num_(p) {}
  Scalar(Poly num, Den den);  // reduces

  static Scalar q(int e = 1) { return Scalar(Poly::sym(kSymQ, e)); }
  static Scalar c(int e = 1) { return Scalar(Poly::sym(kSymC, e)); }
  static Scalar M(int e = 1) { return Scalar(Poly::sym(kSymM, e)); }
  static Scalar E(int e = 1) { return Scalar(Poly::sym(kSymE, e)); }
  static Scalar charge(int e = 1) { return Scalar(Poly::sym(kSymCharge, e)); }
  static Scalar i() { return Scalar(GQ::I()); }
  static Scalar frac(long n, long d) { return Scalar(GQ::frac(n, d)); }
  static Scalar lambda();       // q - q^{-1}
  static Scalar lambda_plus();  // q + q^{-1}

  const Poly& num() const { return num_; }
  const Den& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;  // throws std::domain_error on zero
  Scalar pow(int n) const;
  Scalar conj() const;
  Scalar subst_q_inverse() const;
  // q -> 1; throws PoleError if a denominator factor vanishes at q = 1
  Scalar eval_q1() const;

  // Charge grading: numerator part of degree < bound in e (denominators are
  // e-free in every construction of the engine).
  int min_exp(int s) const { return num_.min_exp(s); }
  Scalar low_part(int s, int bound) const;
  bool depends_on(int s) const;

  std::string str() const;

 private:
  void reduce();
  Poly num_;
  Den den_;
};

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse the text produced by Scalar::str (a rational expression in
// q, c, M, E, e, i and numbers). Throws std::invalid_argument.
Scalar parse_scalar(const std::string& text);

// ---- q-combinatorics ----
// [[a]]_{q^base}; a < 0 gives -q^{base*a} [[-a]]_{q^base} (Laurent form)
Scalar q_number(int a, int base);
Scalar q_factorial(int n, int base);
Scalar q_falling(int n, int k, int base);  // [[n]][[n-1]]...[[n-k+1]]
Scalar q_binomial(int n, int k, int base);
Scalar q_double_factorial(int n, int base);
Scalar rational_binomial(const mpq_class& alpha, int k);
inline Scalar scalar_conjugate(const Scalar& s) { return s.conj(); }
inline Scalar substitute_q_inverse(const Scalar& s) { return s.subst_q_inverse(); }

// number of registered denominator factors (diagnostics)
std::size_t factor_registry_size();

}  // namespace qkg
