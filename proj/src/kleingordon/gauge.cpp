#include <stdexcept>

#include "qkg/kleingordon.hpp"

namespace qkg {

namespace {

Scalar ie() { return Scalar::i() * Scalar::charge(); }
Scalar iec() { return ie() * Scalar::c(-1); }

bool time_only(const Series& f) {
  for (auto& [k, c] : f.terms())
    if (k != key_var(kT, key_exp(k, kT))) return false;
  return true;
}

Series pot_product(const Series& a, const Series& w, Side side) { return side == Side::kLeft ? star(a, w) : star(w, a); }

}  // namespace

Series covariant_derivative(int index, const Series& w, const GaugePotential& pot, Side side) {
  bool left = side == Side::kLeft;
  if (index == kIdxTime)
    return (left ? time_derivative(w) : -time_derivative(w)) + pot_product(pot.a0, w, side).scaled(ie());
  if (index < 0 || index > 2) throw std::invalid_argument("covariant_derivative: bad index");
  Series d = left ? d_left(index, w) : d_right(index, w);
  return d - pot_product(pot.a[std::size_t(index)], w, side).scaled(iec());
}

Series covariant_derivative_lower(int index, const Series& w, const GaugePotential& pot, Side side) {
  if (index == kIdxTime) return covariant_derivative(index, w, pot, side);
  if (index < 0 || index > 2) throw std::invalid_argument("covariant_derivative: bad index");
  Family lowered = lower_index(pot.a);
  Series d = side == Side::kLeft ? d_left_lower(index, w) : d_right_lower(index, w);
  return d - pot_product(lowered[std::size_t(index)], w, side).scaled(iec());
}

GaugeTransformed gauge_transform(const GaugePotential& pot, const Series& w, const Series& chi, int order,
                                 GaugeConvention conv) {
  if (!time_only(chi)) throw std::invalid_argument("gauge function must depend on t only");
  if (order < 0) throw std::invalid_argument("gauge expansion order must be non-negative");
  // exp(i e c^-1 chi) to the given order in e
  Series phase(1), pw(1);
  Scalar fact(1);
  Series arg = chi.scaled(iec());
  for (int n = 1; n <= order; ++n) {
    pw = pw * arg;
    fact *= Scalar(n);
    phase += pw.scaled(fact.inverse());
  }
  Box b;
  b.b[kGE] = order + 1;
  phase.set_box(b);

  GaugeTransformed out;
  Series dchi = time_derivative(chi);
  out.pot.a0 = pot.a0 - (conv == GaugeConvention::kCovariant ? dchi.scaled(Scalar::c(-1)) : dchi);
  for (int c = 0; c < 3; ++c) out.pot.a[std::size_t(c)] = pot.a[std::size_t(c)] + d_left(c, chi);
  out.w = star(phase, w);
  out.phase = phase;
  return out;
}

Series gauge_residual(int index, const GaugePotential& pot, const Series& w, const Series& chi, int order,
                      GaugeConvention conv) {
  GaugeTransformed g = gauge_transform(pot, w, chi, order, conv);
  return covariant_derivative(index, g.w, g.pot) - star(g.phase, covariant_derivative(index, w, pot));
}

}  // namespace qkg
