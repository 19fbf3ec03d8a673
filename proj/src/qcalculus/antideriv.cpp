#include <stdexcept>

#include "qkg/detail/monoop.hpp"
#include "qkg/qcalculus.hpp"

namespace qkg {

using detail::MonoOp;
using detail::Triple;
using detail::tri;

namespace {

// inverse of the leading part q^{2b} D_{q^4,x^-} of d_-
Series lead_minus_inverse(const Series& f) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) {
    Triple m = detail::triple_of(k, kChartX);
    t.emplace_back(k + key_var(kXM), c * Scalar::q(-2 * m[1]) / q_number(m[2] + 1, 4));
  }
  return Series::from_terms(std::move(t));
}

// the correction lambda x^+ D^2_{q^2,x^3}
Series correction_minus(const Series& f) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) {
    int b = key_exp(k, kX3);
    if (b < 2) continue;
    t.emplace_back(k - key_var(kX3, 2) + key_var(kXP),
                   c * Scalar::lambda() * q_number(b, 2) * q_number(b - 1, 2));
  }
  return Series::from_terms(std::move(t));
}

const MonoOp& inverse_op(int a) {
  static const MonoOp ops[3] = {
      MonoOp([](const Triple& m) { return tri({m[0] + 1, m[1], m[2]}, q_number(m[0] + 1, 4).inverse()); }, 1),
      MonoOp(
          [](const Triple& m) {
            return tri({m[0], m[1] + 1, m[2]}, Scalar::q(-2 * m[0]) / q_number(m[1] + 1, 2));
          },
          1),
      // Neumann series; the correction lowers the x^3 degree by two and terminates
      MonoOp(
          [](const Triple& m) {
            Series cur = lead_minus_inverse(tri(m)), r = cur;
            while (!cur.is_zero()) {
              cur = -lead_minus_inverse(correction_minus(cur));
              r += cur;
            }
            return r;
          },
          1)};
  return ops[a];
}

}  // namespace

Series antiderivative(int a, const Series& f) {
  if (a < 0 || a > kIdxTime) throw std::invalid_argument("derivative index out of range");
  if (a < kIdxTime) return inverse_op(a).apply(f);
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) {
    int n = key_exp(k, kT);
    t.emplace_back(k + key_var(kT), c / Scalar(n + 1));
  }
  return Series::from_terms(std::move(t), f.box().shifted(kGT, 1));
}

Series scale_operator(const Series& f, const mpq_class& power) {
  std::vector<Series::Term> t;
  t.reserve(f.size());
  for (auto& [k, c] : f.terms()) {
    mpq_class e = 4 * power * key_degree(k, kGX);
    if (e.get_den() != 1) throw std::invalid_argument("scale_operator: non-integral power of q");
    int n = int(e.get_num().get_si());
    t.emplace_back(k, n ? c * Scalar::q(n) : c);
  }
  return Series::from_terms(std::move(t), f.box());
}

}  // namespace qkg
