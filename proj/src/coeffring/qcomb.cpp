#include <map>
#include <mutex>
#include <tuple>

#include "qkg/coeffring.hpp"
#include "qkg/detail/expr_parser.hpp"

namespace qkg {

Scalar parse_scalar(const std::string& text) {
  detail::ExprParser<Scalar> p(
      text,
      [](const std::string& id) -> Scalar {
        if (id == "q") return Scalar::q();
        if (id == "c") return Scalar::c();
        if (id == "M") return Scalar::M();
        if (id == "E") return Scalar::E();
        if (id == "e") return Scalar::charge();
        if (id == "i") return Scalar::i();
        throw std::invalid_argument("unknown symbol '" + id + "'");
      },
      [](const Scalar& a, const Scalar& b) { return a / b; },
      [](const Scalar& a, int n) { return a.pow(n); });
  return p.parse();
}

Scalar q_number(int a, int base) {
  if (a < 0) return -(Scalar::q(base * a) * q_number(-a, base));
  std::vector<Poly::Term> t;
  for (int j = 0; j < a; ++j) t.push_back({mono_sym(kSymQ, base * j), GQ(1)});
  return Scalar(Poly::from_terms(std::move(t)));
}

Scalar q_factorial(int n, int base) {
  if (n < 0) throw std::invalid_argument("q_factorial of negative integer");
  return q_falling(n, n, base);
}

Scalar q_falling(int n, int k, int base) {
  if (k < 0) throw std::invalid_argument("q_falling with negative length");
  Scalar r(1);
  for (int j = 0; j < k; ++j) r *= q_number(n - j, base);
  return r;
}

namespace {
std::mutex binom_mu;
std::map<std::tuple<int, int, int>, Scalar> binom_cache;
}  // namespace

Scalar q_binomial(int n, int k, int base) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("q_binomial needs 0 <= k <= n");
  if (k == 0 || k == n) return Scalar(1);
  {
    std::lock_guard lk(binom_mu);
    auto it = binom_cache.find({n, k, base});
    if (it != binom_cache.end()) return it->second;
  }
  // [n,k]_x = [n-1,k-1]_x + x^k [n-1,k]_x with x = q^base
  Scalar r = q_binomial(n - 1, k - 1, base);
  if (k <= n - 1) r += Scalar::q(base * k) * q_binomial(n - 1, k, base);
  std::lock_guard lk(binom_mu);
  binom_cache.emplace(std::make_tuple(n, k, base), r);
  return r;
}

Scalar q_double_factorial(int n, int base) {
  if (n < 0 || n % 2) throw std::invalid_argument("q_double_factorial needs an even n >= 0");
  Scalar r(1);
  for (int j = n; j > 0; j -= 2) r *= q_number(j, base);
  return r;
}

Scalar rational_binomial(const mpq_class& alpha, int k) {
  if (k < 0) throw std::invalid_argument("rational_binomial with negative k");
  mpq_class r = 1;
  for (int j = 0; j < k; ++j) {
    r *= (alpha - j);
    r /= (j + 1);
  }
  return Scalar(GQ(r));
}

}  // namespace qkg
