#include <algorithm>
#include <map>
#include <sstream>

#include "qkg/detail/expr_parser.hpp"
#include "qkg/starcalc.hpp"

namespace qkg {

const char* var_name(int v) {
  static const char* n[] = {"xp", "x3", "xm", "t", "pp", "p3", "pm", "yp", "y3", "ym"};
  return n[v];
}

Key key_make(const std::array<int, kNumVars>& e) {
  Key k = 0;
  for (int v = 0; v < kNumVars; ++v) {
    if (e[v] < 0 || e[v] > kKeyMax) throw std::out_of_range("exponent out of range");
    k |= key_var(v, e[v]);
  }
  return k;
}

static int chart_degree(Key k, int ch) {
  int d = 0;
  for (int v : chart_vars(ch)) d += key_exp(k, v);
  return d;
}

int key_degree(Key k, int group) {
  switch (group) {
    case kGX: return chart_degree(k, kChartX);
    case kGT: return key_exp(k, kT);
    case kGP: return chart_degree(k, kChartP);
    case kGY: return chart_degree(k, kChartY);
    case kGXY: return chart_degree(k, kChartX) + chart_degree(k, kChartY);
  }
  throw std::invalid_argument("key_degree: bad group");
}

bool Box::exact() const {
  for (int x : b)
    if (x < kInf) return false;
  return true;
}

bool Box::in_error(Key k) const {
  for (int g = 0; g < kGE; ++g)
    if (b[g] < kInf && key_degree(k, g) >= b[g]) return true;
  return false;
}

Box Box::meet(const Box& o) const {
  Box r;
  for (int g = 0; g < kNumGroups; ++g) r.b[g] = std::min(b[g], o.b[g]);
  return r;
}

Box Box::shifted(int group, int delta) const {
  Box r = *this;
  if (r.b[group] < kInf) r.b[group] = std::max(0, r.b[group] + delta);
  return r;
}

Series::Series(const Scalar& c) {
  if (!c.is_zero()) t_.emplace_back(Key(0), c);
}

Series Series::monomial(Key k, const Scalar& c) {
  Series s;
  if (!c.is_zero()) s.t_.emplace_back(k, c);
  return s;
}

Series Series::from_terms(std::vector<Term> t, Box box) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Series s;
  s.box_ = box;
  for (auto& x : t) {
    if (!s.t_.empty() && s.t_.back().first == x.first) {
      s.t_.back().second += x.second;
      if (s.t_.back().second.is_zero()) s.t_.pop_back();
    } else if (!x.second.is_zero()) {
      s.t_.push_back(std::move(x));
    }
  }
  return s;
}

Scalar Series::coefficient(Key k) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), k, [](const Term& a, Key b) { return a.first < b; });
  if (it != t_.end() && it->first == k) return it->second;
  return Scalar();
}

int Series::min_degree(int group) const {
  int r = kInf;
  for (auto& [k, c] : t_)
    r = std::min(r, group == kGE ? c.min_exp(kSymCharge) : key_degree(k, group));
  return r;
}

int Series::max_degree(int group) const {
  int r = 0;
  for (auto& [k, c] : t_) r = std::max(r, key_degree(k, group));
  return r;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& x : s.t_) x.second = -x.second;
  return s;
}

static void merge(std::vector<Series::Term>& out, const std::vector<Series::Term>& a,
                  const std::vector<Series::Term>& b, bool neg) {
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, neg ? -b[j].second : b[j].second);
      ++j;
    } else {
      Scalar c = neg ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
}

Series& Series::operator+=(const Series& o) {
  box_ = box_.meet(o.box_);
  if (o.t_.empty()) return *this;
  std::vector<Term> r;
  merge(r, t_, o.t_, false);
  t_ = std::move(r);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  box_ = box_.meet(o.box_);
  if (o.t_.empty()) return *this;
  std::vector<Term> r;
  merge(r, t_, o.t_, true);
  t_ = std::move(r);
  return *this;
}

Series Series::scaled(const Scalar& c) const {
  if (c.is_zero()) return Series();
  Series s = *this;
  for (auto& x : s.t_) x.second *= c;
  int e = c.min_exp(kSymCharge);
  if (e) s.box_ = s.box_.shifted(kGE, e);
  return s;
}

Box product_box(const Series& a, const Series& b) {
  if ((a.is_zero() && a.box().exact()) || (b.is_zero() && b.box().exact())) return Box();
  Box r;
  for (int g = 0; g < kNumGroups; ++g) {
    int loa = a.box().exact() ? a.min_degree(g) : 0;
    int lob = b.box().exact() ? b.min_degree(g) : 0;
    int x = a.box().b[g] < kInf ? a.box().b[g] + lob : kInf;
    int y = b.box().b[g] < kInf ? b.box().b[g] + loa : kInf;
    r.b[g] = std::min({x, y, kInf});
  }
  return r;
}

Series operator*(const Series& a, const Series& b) {
  std::map<Key, Scalar> acc;
  for (auto& [ka, ca] : a.t_)
    for (auto& [kb, cb] : b.t_) {
      Key k = ka + kb;
      for (int v = 0; v < kNumVars; ++v)
        if (key_exp(ka, v) + key_exp(kb, v) > kKeyMax) throw std::overflow_error("exponent overflow");
      auto [it, fresh] = acc.try_emplace(k);
      if (fresh)
        it->second = ca * cb;
      else
        it->second += ca * cb;
    }
  std::vector<Series::Term> t;
  for (auto& [k, c] : acc)
    if (!c.is_zero()) t.emplace_back(k, std::move(c));
  Series s;
  s.t_ = std::move(t);
  s.box_ = product_box(a, b);
  return s;
}

bool Series::operator==(const Series& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].first != o.t_[i].first || t_[i].second != o.t_[i].second) return false;
  return true;
}

Series Series::truncated(int group, int max) const {
  Series s;
  s.box_ = box_;
  if (group == kGE) {
    for (auto& [k, c] : t_) {
      Scalar l = c.low_part(kSymCharge, max + 1);
      if (!l.is_zero()) s.t_.emplace_back(k, std::move(l));
    }
  } else {
    for (auto& x : t_)
      if (key_degree(x.first, group) <= max) s.t_.push_back(x);
  }
  s.box_.b[group] = std::min(s.box_.b[group], max + 1);
  return s;
}

Series Series::pruned() const {
  Series s;
  s.box_ = box_;
  for (auto& [k, c] : t_) {
    if (box_.in_error(k)) continue;
    if (box_.b[kGE] < kInf) {
      Scalar l = c.low_part(kSymCharge, box_.b[kGE]);
      if (!l.is_zero()) s.t_.emplace_back(k, std::move(l));
    } else {
      s.t_.emplace_back(k, c);
    }
  }
  return s;
}

static std::string mono_text(Key k) {
  std::string s;
  for (int v = 0; v < kNumVars; ++v) {
    int e = key_exp(k, v);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string term_str(Key k, const Scalar& c) {
  std::string m = mono_text(k);
  if (m.empty()) return "(" + c.str() + ")";
  if (c == Scalar(1)) return m;
  return "(" + c.str() + ")*" + m;
}

std::string Series::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [k, c] : t_) {
    if (!s.empty()) s += " + ";
    s += term_str(k, c);
  }
  return s;
}

Series parse_series(const std::string& text) {
  detail::ExprParser<Series> p(
      text,
      [](const std::string& id) -> Series {
        for (int v = 0; v < kNumVars; ++v)
          if (id == var_name(v)) return Series::var(v);
        if (id == "q") return Series(Scalar::q());
        if (id == "c") return Series(Scalar::c());
        if (id == "M") return Series(Scalar::M());
        if (id == "E") return Series(Scalar::E());
        if (id == "e") return Series(Scalar::charge());
        if (id == "i") return Series(Scalar::i());
        throw std::invalid_argument("unknown symbol '" + id + "'");
      },
      [](const Series& a, const Series& b) {
        if (b.size() != 1 || b.terms()[0].first != 0) throw std::invalid_argument("division by a non-scalar series");
        return a.scaled(b.terms()[0].second.inverse());
      },
      [](const Series& a, int n) {
        if (n < 0) {
          if (a.size() != 1 || a.terms()[0].first != 0) throw std::invalid_argument("negative power of a non-scalar series");
          return Series(a.terms()[0].second.pow(n));
        }
        Series r(1);
        for (int j = 0; j < n; ++j) r = r * a;
        return r;
      });
  return p.parse();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kExactZero: return "exact-zero";
    case Verdict::kBoundaryOnly: return "boundary-only";
    case Verdict::kViolation: return "VIOLATION";
  }
  return "?";
}

Classification classify(const Series& r, std::size_t max_offending) {
  Classification out;
  out.residual_terms = r.size();
  if (r.is_zero()) return out;
  out.verdict = Verdict::kBoundaryOnly;
  const Box& b = r.box();
  for (auto& [k, c] : r.terms()) {
    if (b.in_error(k)) continue;
    Scalar low = b.b[kGE] < kInf ? c.low_part(kSymCharge, b.b[kGE]) : c;
    if (low.is_zero()) continue;
    out.verdict = Verdict::kViolation;
    if (out.offending.size() < max_offending) out.offending.push_back(term_str(k, low));
  }
  return out;
}

}  // namespace qkg
