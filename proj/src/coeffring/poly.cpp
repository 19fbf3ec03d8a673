#include "qkg/coeffring.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace qkg {

GQ& GQ::operator*=(const GQ& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GQ GQ::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (sgn(im) == 0) return GQ(1 / re);
  mpq_class d = re * re + im * im;
  return GQ(re / d, -im / d);
}

static std::string q_str(const mpq_class& v) { return v.get_str(); }

std::string GQ::str() const {
  if (sgn(im) == 0) return q_str(re);
  std::string ip = (im == 1) ? "i" : (im == -1) ? "-i" : q_str(im) + "*i";
  if (sgn(re) == 0) return ip;
  std::string s = q_str(re);
  if (ip[0] == '-') return "(" + s + ip + ")";
  return "(" + s + "+" + ip + ")";
}

const char* sym_name(int s) {
  static const char* n[] = {"q", "c", "M", "E", "e"};
  return n[s];
}

Mono mono_make(const std::array<int, kNumSyms>& e) {
  Mono m = 0;
  for (int s = 0; s < kNumSyms; ++s) m |= mono_field(s, e[s]);
  return m;
}

Poly::Poly(const GQ& c) {
  if (!c.is_zero()) t_.push_back({kMonoOne, c});
}

Poly Poly::monomial(Mono m, const GQ& c) {
  Poly p;
  if (!c.is_zero()) p.t_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> t) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
  Poly p;
  for (auto& x : t) {
    if (!p.t_.empty() && p.t_.back().m == x.m) {
      p.t_.back().c += x.c;
      if (p.t_.back().c.is_zero()) p.t_.pop_back();
    } else if (!x.c.is_zero()) {
      p.t_.push_back(std::move(x));
    }
  }
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& x : p.t_) x.c = -x.c;
  return p;
}

static void merge_add(std::vector<Poly::Term>& out, const std::vector<Poly::Term>& a,
                      const std::vector<Poly::Term>& b, bool negate_b) {
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].m > b[j].m)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].m > a[i].m) {
      out.push_back(b[j]);
      if (negate_b) out.back().c = -out.back().c;
      ++j;
    } else {
      GQ c = negate_b ? a[i].c - b[j].c : a[i].c + b[j].c;
      if (!c.is_zero()) out.push_back({a[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return *this = o;
  std::vector<Term> r;
  merge_add(r, t_, o.t_, false);
  t_ = std::move(r);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.t_.empty()) return *this;
  std::vector<Term> r;
  merge_add(r, t_, o.t_, true);
  t_ = std::move(r);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t_.empty() || b.t_.empty()) return Poly();
  if (b.t_.size() == 1) {
    Poly r;
    r.t_.reserve(a.t_.size());
    for (auto& x : a.t_) r.t_.push_back({mono_mul(x.m, b.t_[0].m), x.c * b.t_[0].c});
    return r;
  }
  if (a.t_.size() == 1) return b * a;
  std::unordered_map<Mono, GQ> acc;
  acc.reserve(a.t_.size() * b.t_.size());
  for (auto& x : a.t_)
    for (auto& y : b.t_) {
      auto [it, fresh] = acc.try_emplace(mono_mul(x.m, y.m));
      if (fresh)
        it->second = x.c * y.c;
      else
        it->second += x.c * y.c;
    }
  std::vector<Poly::Term> t;
  t.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) t.push_back({m, std::move(c)});
  std::sort(t.begin(), t.end(), [](const Poly::Term& u, const Poly::Term& v) { return u.m > v.m; });
  Poly r;
  r.t_ = std::move(t);
  return r;
}

Poly Poly::scaled(const GQ& c) const {
  if (c.is_zero()) return Poly();
  Poly p = *this;
  if (c.is_one()) return p;
  for (auto& x : p.t_) x.c *= c;
  return p;
}

Poly Poly::shifted(Mono m) const {
  Poly p = *this;
  for (auto& x : p.t_) x.m = mono_mul(x.m, m);
  return p;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
  return true;
}

int Poly::min_exp(int s) const {
  if (t_.empty()) return 0;
  int r = mono_exp(t_[0].m, s);
  for (auto& x : t_) r = std::min(r, mono_exp(x.m, s));
  return r;
}

int Poly::max_exp(int s) const {
  if (t_.empty()) return 0;
  int r = mono_exp(t_[0].m, s);
  for (auto& x : t_) r = std::max(r, mono_exp(x.m, s));
  return r;
}

bool Poly::depends_on(int s) const {
  for (auto& x : t_)
    if (mono_exp(x.m, s) != 0) return true;
  return false;
}

bool Poly::univariate_in(int s) const {
  for (int o = 0; o < kNumSyms; ++o)
    if (o != s && depends_on(o)) return false;
  return true;
}

Mono Poly::content() const {
  std::array<int, kNumSyms> e{};
  for (int s = 0; s < kNumSyms; ++s) e[s] = min_exp(s);
  return mono_make(e);
}

static bool mono_divides(Mono d, Mono m) {
  for (int s = 0; s < kNumSyms; ++s)
    if (mono_exp(d, s) > mono_exp(m, s)) return false;
  return true;
}

std::optional<Poly> Poly::divide_exact(const Poly& f) const {
  if (t_.empty()) return Poly();
  Mono shift = content();
  Mono lf = f.lead().m;
  // working remainder in descending order
  std::map<Mono, GQ, std::greater<Mono>> r;
  for (auto& x : t_) r.emplace(mono_div(x.m, shift), x.c);
  std::vector<Term> quot;
  while (!r.empty()) {
    auto it = r.begin();
    if (!mono_divides(lf, it->first)) return std::nullopt;
    Mono qm = mono_div(it->first, lf);
    GQ qc = it->second;  // f is monic
    for (auto& y : f.t_) {
      Mono m = mono_mul(qm, y.m);
      auto [jt, fresh] = r.try_emplace(m);
      if (fresh)
        jt->second = -(qc * y.c);
      else {
        jt->second -= qc * y.c;
        if (jt->second.is_zero()) r.erase(jt);
      }
    }
    quot.push_back({mono_mul(qm, shift), std::move(qc)});
  }
  Poly p;
  p.t_ = std::move(quot);  // produced in descending order
  return p;
}

Poly Poly::conj() const {
  Poly p = *this;
  for (auto& x : p.t_) x.c = x.c.conj();
  return p;
}

Poly Poly::subst_inverse(int s) const {
  std::vector<Term> t;
  t.reserve(t_.size());
  for (auto& x : t_) {
    int e = mono_exp(x.m, s);
    t.push_back({x.m - mono_field(s, e) + mono_field(s, -e), x.c});
  }
  return from_terms(std::move(t));
}

Poly Poly::eval_at_one(int s) const {
  std::vector<Term> t;
  t.reserve(t_.size());
  for (auto& x : t_) {
    int e = mono_exp(x.m, s);
    t.push_back({x.m - mono_field(s, e) + mono_field(s, 0), x.c});
  }
  return from_terms(std::move(t));
}

Poly Poly::low_part(int s, int bound) const {
  Poly p;
  for (auto& x : t_)
    if (mono_exp(x.m, s) < bound) p.t_.push_back(x);
  return p;
}

static std::string mono_str(Mono m) {
  std::string s;
  for (int k = 0; k < kNumSyms; ++k) {
    int e = mono_exp(m, k);
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += sym_name(k);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& x : t_) {
    std::string ms = mono_str(x.m);
    std::string cs;
    bool neg = false;
    GQ c = x.c;
    if (c.is_real() && sgn(c.re) < 0) {
      neg = true;
      c = -c;
    }
    if (ms.empty())
      cs = c.str();
    else if (c.is_one())
      cs = ms;
    else
      cs = c.str() + "*" + ms;
    if (first)
      os << (neg ? "-" : "") << cs;
    else
      os << (neg ? " - " : " + ") << cs;
    first = false;
  }
  return os.str();
}

}  // namespace qkg
