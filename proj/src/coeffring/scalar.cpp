#include <gmp.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "qkg/coeffring.hpp"

namespace qkg {

// A registered denominator factor. Immutable after registration.
struct Factor {
  Poly p;
  std::string text;
  int cyclo = 0;  // d when p is the cyclotomic polynomial Phi_d(q)
  // modular prefilter: evaluation point where p vanishes
  bool filter = false;
  std::uint64_t prime = 0;
  std::array<std::uint64_t, kNumSyms> point{};
  std::uint64_t imod = 0;
};

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

std::vector<int> prime_divisors(int n) {
  std::vector<int> r;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      r.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) r.push_back(n);
  return r;
}

// element of exact multiplicative order d in F_p (d | p-1)
u64 root_of_order(int d, u64 p) {
  auto pd = prime_divisors(d);
  for (u64 g = 2;; ++g) {
    u64 z = powmod(g, (p - 1) / d, p);
    bool ok = true;
    for (int r : pd)
      if (powmod(z, d / r, p) == 1) ok = false;
    if (ok) return z;
  }
}

// value of a rational modulo p; false when the denominator vanishes
bool rat_mod(const mpq_class& v, u64 p, u64& out) {
  u64 d = mpz_fdiv_ui(v.get_den_mpz_t(), p);
  if (d == 0) return false;
  u64 n = mpz_fdiv_ui(v.get_num_mpz_t(), p);  // fdiv gives the non-negative residue
  out = mulmod(n, invmod(d, p), p);
  return true;
}

// Evaluate poly at the factor's point; returns false when evaluation is not
// possible (bad denominator), sets zero accordingly.
bool eval_mod(const Poly& a, const Factor& f, bool& zero) {
  const u64 p = f.prime;
  u64 acc = 0;
  for (auto& t : a.terms()) {
    u64 re = 0, im = 0;
    if (!rat_mod(t.c.re, p, re) || !rat_mod(t.c.im, p, im)) return false;
    u64 c = (re + mulmod(im, f.imod, p)) % p;
    for (int s = 0; s < kNumSyms; ++s) {
      int e = mono_exp(t.m, s);
      if (e == 0) continue;
      u64 b = f.point[s];
      if (e < 0) {
        b = invmod(b, p);
        e = -e;
      }
      c = mulmod(c, powmod(b, u64(e), p), p);
    }
    acc = (acc + c) % p;
  }
  zero = (acc == 0);
  return true;
}

struct Registry {
  std::shared_mutex mu;
  std::map<std::string, std::unique_ptr<Factor>> by_text;
  std::map<int, Poly> cyclo;
  std::mutex cyclo_mu;
};

Registry& registry() {
  static Registry r;
  return r;
}

bool factor_less(const Factor* a, const Factor* b) { return a->text < b->text; }

// unit * x^content * monic
struct Normalized {
  GQ unit;
  Mono content;
  Poly monic;
};

Normalized normalize(const Poly& p) {
  Normalized n;
  n.content = p.content();
  Poly s = p.shifted(mono_div(kMonoOne, n.content));
  n.unit = s.lead().c;
  n.monic = s.scaled(n.unit.inverse());
  return n;
}

void setup_filter(Factor& f) {
  if (f.cyclo <= 0) return;
  int d = f.cyclo;
  int L = std::lcm(4, d);
  mpz_class p = mpz_class(1) << 30;
  p = (p / L) * L + 1;
  while (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) p += L;
  f.prime = p.get_ui();
  f.imod = root_of_order(4, f.prime);
  f.point = {root_of_order(d, f.prime), 1000003 % f.prime, 1000033 % f.prime, 1000037 % f.prime,
             1000039 % f.prime};
  f.filter = true;
}

const Factor* intern(const Poly& monic, int cyclo = 0) {
  Registry& r = registry();
  std::string key = monic.str();
  {
    std::shared_lock lk(r.mu);
    auto it = r.by_text.find(key);
    if (it != r.by_text.end()) return it->second.get();
  }
  std::unique_lock lk(r.mu);
  auto it = r.by_text.find(key);
  if (it != r.by_text.end()) return it->second.get();
  auto f = std::make_unique<Factor>();
  f->p = monic;
  f->text = key;
  f->cyclo = cyclo;
  setup_filter(*f);
  const Factor* out = f.get();
  r.by_text.emplace(key, std::move(f));
  return out;
}

const Poly& cyclotomic(int d) {
  Registry& r = registry();
  std::lock_guard lk(r.cyclo_mu);
  auto it = r.cyclo.find(d);
  if (it != r.cyclo.end()) return it->second;
  // Phi_d = (q^d - 1) / prod_{e | d, e < d} Phi_e
  Poly num = Poly::sym(kSymQ, d) - Poly(1);
  for (int e = 1; e < d; ++e) {
    if (d % e) continue;
    auto jt = r.cyclo.find(e);
    if (jt == r.cyclo.end()) throw std::logic_error("cyclotomic divisors not built");
    num = *num.divide_exact(jt->second);
  }
  return r.cyclo.emplace(d, num).first->second;
}

const Poly& cyclotomic_poly(int d) {
  for (int e = 1; e < d; ++e)
    if (d % e == 0) cyclotomic(e);
  return cyclotomic(d);
}

bool divisible(const Poly& a, const Factor& f, Poly& quot) {
  if (f.filter) {
    bool zero = false;
    if (eval_mod(a, f, zero) && !zero) return false;
  }
  auto r = a.divide_exact(f.p);
  if (!r) return false;
  quot = std::move(*r);
  return true;
}

int euler_phi(int n) {
  int r = n;
  for (int p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

// Factor a polynomial into unit * monomial * prod registered factors.
struct Factored {
  GQ unit;
  Mono content;
  Scalar::Den den;
};

void add_factor(Scalar::Den& d, const Factor* f, int k) {
  for (auto& [g, m] : d)
    if (g == f) {
      m += k;
      return;
    }
  d.emplace_back(f, k);
}

void sort_den(Scalar::Den& d) {
  std::sort(d.begin(), d.end(), [](auto& a, auto& b) { return factor_less(a.first, b.first); });
  Scalar::Den out;
  for (auto& e : d) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(e);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }), out.end());
  d = std::move(out);
}

Factored factorize(const Poly& p) {
  Factored out;
  Normalized n = normalize(p);
  out.unit = n.unit;
  out.content = n.content;
  Poly rest = n.monic;
  if (rest.is_constant()) return out;
  {
    int deg = rest.max_exp(kSymQ);
    for (int d = 1; d <= 4 * deg + 4 && !rest.is_constant(); ++d) {
      if (euler_phi(d) > rest.max_exp(kSymQ)) continue;
      const Factor* f = intern(cyclotomic_poly(d), d);
      Poly q;
      while (divisible(rest, *f, q)) {
        rest = q;
        add_factor(out.den, f, 1);
      }
    }
  }
  if (!rest.is_constant() && !rest.univariate_in(kSymQ)) {
    std::vector<const Factor*> known;
    {
      Registry& r = registry();
      std::shared_lock lk(r.mu);
      for (auto& [k, f] : r.by_text)
        if (f->cyclo == 0) known.push_back(f.get());
    }
    for (const Factor* f : known) {
      if (rest.is_constant()) break;
      Poly q;
      while (divisible(rest, *f, q)) {
        rest = q;
        add_factor(out.den, f, 1);
      }
    }
  }
  if (!rest.is_constant()) {
    Normalized m = normalize(rest);
    out.unit *= m.unit;
    out.content = mono_mul(out.content, m.content);
    add_factor(out.den, intern(m.monic), 1);
  } else if (!rest.is_zero()) {
    out.unit *= rest.lead().c;
  }
  sort_den(out.den);
  return out;
}

Poly factor_power(const Factor* f, int k) {
  Poly r(1);
  for (int j = 0; j < k; ++j) r = r * f->p;
  return r;
}

}  // namespace

std::size_t factor_registry_size() {
  Registry& r = registry();
  std::shared_lock lk(r.mu);
  return r.by_text.size();
}

Scalar::Scalar(Poly num, Den den) : num_(std::move(num)), den_(std::move(den)) {
  sort_den(den_);
  reduce();
}

void Scalar::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, k] : den_) {
    Poly q;
    while (k > 0 && divisible(num_, *f, q)) {
      num_ = std::move(q);
      --k;
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](auto& e) { return e.second == 0; }), den_.end());
}

Scalar Scalar::lambda() { return q(1) - q(-1); }
Scalar Scalar::lambda_plus() { return q(1) + q(-1); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.empty()) reduce();
    if (num_.is_zero()) den_.clear();
    return *this;
  }
  Den L;
  std::size_t i = 0, j = 0;
  Poly a = num_, b = o.num_;
  while (i < den_.size() || j < o.den_.size()) {
    if (j == o.den_.size() || (i < den_.size() && factor_less(den_[i].first, o.den_[j].first))) {
      b = b * factor_power(den_[i].first, den_[i].second);
      L.push_back(den_[i++]);
    } else if (i == den_.size() || factor_less(o.den_[j].first, den_[i].first)) {
      a = a * factor_power(o.den_[j].first, o.den_[j].second);
      L.push_back(o.den_[j++]);
    } else {
      int ka = den_[i].second, kb = o.den_[j].second;
      if (ka < kb) a = a * factor_power(den_[i].first, kb - ka);
      if (kb < ka) b = b * factor_power(den_[i].first, ka - kb);
      L.emplace_back(den_[i].first, std::max(ka, kb));
      ++i;
      ++j;
    }
  }
  num_ = a + b;
  den_ = std::move(L);
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  // a monomial factor cannot change divisibility by content-free factors
  bool mono = (o.den_.empty() && o.num_.size() == 1) || (den_.empty() && num_.size() == 1);
  num_ = num_ * o.num_;
  if (o.den_.empty() && den_.empty()) return *this;
  if (mono) {
    if (!o.den_.empty()) {
      for (auto& e : o.den_) add_factor(den_, e.first, e.second);
      sort_den(den_);
    }
    return *this;
  }
  if (!o.den_.empty()) {
    for (auto& e : o.den_) add_factor(den_, e.first, e.second);
    sort_den(den_);
  }
  reduce();
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return (*this - o).is_zero();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  Factored f = factorize(num_);
  Poly n = Poly::monomial(mono_div(kMonoOne, f.content), f.unit.inverse());
  for (auto& [g, k] : den_) n = n * factor_power(g, k);
  return Scalar(std::move(n), std::move(f.den));
}

Scalar Scalar::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

Scalar Scalar::conj() const {
  Scalar r;
  r.num_ = num_.conj();
  for (auto& [f, k] : den_) {
    bool real = true;
    for (auto& t : f->p.terms()) real = real && t.c.is_real();
    r.den_.emplace_back(real ? f : intern(f->p.conj()), k);
  }
  sort_den(r.den_);
  return r;
}

Scalar Scalar::subst_q_inverse() const {
  Scalar r;
  r.num_ = num_.subst_inverse(kSymQ);
  for (auto& [f, k] : den_) {
    Normalized n = normalize(f->p.subst_inverse(kSymQ));
    // 1/(u x^m g)^k = (u x^m)^{-k} / g^k
    GQ u = n.unit.inverse();
    GQ uk(1);
    for (int j = 0; j < k; ++j) uk *= u;
    Mono mk = kMonoOne;
    for (int j = 0; j < k; ++j) mk = mono_div(mk, n.content);
    r.num_ = r.num_.scaled(uk).shifted(mk);
    int cyc = f->cyclo;
    r.den_.emplace_back(intern(n.monic, cyc), k);
  }
  sort_den(r.den_);
  r.reduce();
  return r;
}

Scalar Scalar::eval_q1() const {
  Scalar r;
  r.num_ = num_.eval_at_one(kSymQ);
  Den den;
  for (auto& [f, k] : den_) {
    Poly g = f->p.eval_at_one(kSymQ);
    if (g.is_zero()) throw PoleError("denominator factor " + f->text + " vanishes at q=1");
    Factored fg = factorize(g);
    GQ u = fg.unit.inverse();
    for (int j = 0; j < k; ++j) {
      r.num_ = r.num_.scaled(u).shifted(mono_div(kMonoOne, fg.content));
      for (auto& e : fg.den) add_factor(den, e.first, e.second);
    }
  }
  if (r.num_.is_zero()) return Scalar();
  return Scalar(std::move(r.num_), std::move(den));
}

Scalar Scalar::low_part(int s, int bound) const {
  Scalar r;
  r.num_ = num_.low_part(s, bound);
  if (r.num_.is_zero()) return r;
  r.den_ = den_;
  r.reduce();
  return r;
}

bool Scalar::depends_on(int s) const {
  if (num_.depends_on(s)) return true;
  for (auto& [f, k] : den_)
    if (f->p.depends_on(s)) return true;
  return false;
}

std::string Scalar::str() const {
  if (den_.empty()) return num_.str();
  std::string d;
  for (auto& [f, k] : den_) {
    if (!d.empty()) d += "*";
    d += "(" + f->text + ")";
    if (k != 1) d += "^" + std::to_string(k);
  }
  if (den_.size() > 1 || den_[0].second != 1) d = "(" + d + ")";
  return "(" + num_.str() + ")/" + d;
}

}  // namespace qkg
