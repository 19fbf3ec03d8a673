#include <stdexcept>

#include "qkg/kleingordon.hpp"

namespace qkg {

namespace {

Series lp(int a, int b, const Series& f) { return l_matrix_action(Calculus::kPlain, a, b, f); }

Scalar iec() { return Scalar::i() * Scalar::charge() * Scalar::c(-1); }

// covariant pieces built from one potential
struct Cov {
  const GaugePotential& pot;
  Family low;
  explicit Cov(const GaugePotential& p) : pot(p), low(lower_index(p.a)) {}
  Series dl(int a, const Series& f) const { return d_left(a, f) - star(pot.a[a], f).scaled(iec()); }
  Series dl_dn(int a, const Series& f) const { return d_left_lower(a, f) - star(low[a], f).scaled(iec()); }
  Series dr(int a, const Series& f) const { return d_right(a, f) - star(f, pot.a[a]).scaled(iec()); }
  Series dr_dn(int a, const Series& f) const { return d_right_lower(a, f) - star(f, low[a]).scaled(iec()); }
};

Series kinetic_lhs(const Cov& d, const Series& psi, const Series& phi) {
  Series r;
  for (int c = 0; c < 3; ++c) r += star(d.dr_dn(c, d.dr(c, psi)), phi) - star(psi, d.dl(c, d.dl_dn(c, phi)));
  return r;
}

template <class F>
void for_metric(F fn) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(a, b);
      if (!g.is_zero()) fn(a, b, g);
    }
}

}  // namespace

const char* green_form_name(GreenForm f) {
  switch (f) {
    case GreenForm::kGreen0: return "green0";
    case GreenForm::kGreen1: return "green1";
    case GreenForm::kRearrange1: return "rearrange1";
    case GreenForm::kRearrange2: return "rearrange2";
    case GreenForm::kLMatrixDerivative: return "lmatrix-derivative";
    case GreenForm::kLMatrixCommute: return "lmatrix-commute";
    case GreenForm::kGreenPotentialPrinted1: return "green-potential-printed1";
    case GreenForm::kGreenPotentialPrinted2: return "green-potential-printed2";
    case GreenForm::kGreenPotentialDerived: return "green-potential-derived";
  }
  return "?";
}

bool green_form_uses_potential(GreenForm f) {
  return f == GreenForm::kGreenPotentialPrinted1 || f == GreenForm::kGreenPotentialPrinted2 ||
         f == GreenForm::kGreenPotentialDerived;
}

std::vector<Series> green_identity_residual(GreenForm form, const Series& psi, const Series& phi,
                                            const GaugePotential* pot) {
  if (green_form_uses_potential(form) && !pot) throw std::invalid_argument("green identity needs a potential");
  const Scalar qm2 = Scalar::q(-2), q2 = Scalar::q(2);
  switch (form) {
    case GreenForm::kGreen0: {
      Series r = star(laplacian_right(psi), phi) - star(psi, laplacian_left(phi));
      for_metric([&](int a, int b, const Scalar& g) {
        for (int c = 0; c < 3; ++c) {
          Series rl = right_l(a, c, psi);
          r += d_left(c, star(d_right(b, rl), phi).scaled(qm2) + star(rl, d_left(b, phi))).scaled(g);
        }
      });
      return {r};
    }
    case GreenForm::kGreen1: {
      Series r = star(laplacian_right(psi), phi) - star(psi, laplacian_left(phi));
      Family rda{d_right(0, psi), d_right(1, psi), d_right(2, psi)};
      for_metric([&](int a, int b, const Scalar& g) {
        for (int c = 0; c < 3; ++c) {
          Series l = lp(b, c, phi);
          r -= d_right(c, star(rda[a], l) + star(psi, d_left(a, l)).scaled(q2)).scaled(g);
        }
      });
      return {r};
    }
    case GreenForm::kRearrange1: {
      std::vector<Series> out;
      for (int c = 0; c < 3; ++c) {
        Series r = star(psi, d_left(c, phi)) - star(d_right(c, psi), phi);
        for (int b = 0; b < 3; ++b) r -= d_left(b, star(right_l(c, b, psi), phi));
        out.push_back(r);
      }
      return out;
    }
    case GreenForm::kRearrange2: {
      std::vector<Series> out;
      for (int c = 0; c < 3; ++c) {
        Series r = star(d_right(c, psi), phi) - star(psi, d_left(c, phi));
        for (int b = 0; b < 3; ++b) r -= d_right(b, star(psi, lp(c, b, phi)));
        out.push_back(r);
      }
      return out;
    }
    case GreenForm::kLMatrixDerivative: {
      std::vector<Series> out;
      for (int c = 0; c < 3; ++c) {
        Series r;
        for (int b = 0; b < 3; ++b)
          r += d_right(b, star(psi, lp(c, b, phi))) + d_left(b, star(right_l(c, b, psi), phi));
        out.push_back(r);
      }
      return out;
    }
    case GreenForm::kLMatrixCommute: {
      std::vector<Series> out;
      for (int c = 0; c < 3; ++c) {
        Series r;
        for_metric([&](int b, int d, const Scalar& g) {
          r += d_left(b, lp(d, c, phi)).scaled(g) - lp(b, c, d_left(d, phi)).scaled(g * qm2);
        });
        out.push_back(r);
      }
      return out;
    }
    case GreenForm::kGreenPotentialPrinted1:
    case GreenForm::kGreenPotentialPrinted2: {
      Cov d(*pot);
      Series r = kinetic_lhs(d, psi, phi);
      bool first = form == GreenForm::kGreenPotentialPrinted1;
      for_metric([&](int b, int c, const Scalar& g) {
        for (int f = 0; f < 3; ++f) {
          if (first) {
            Series rl = right_l(b, f, psi);
            r += d_left(f, star(d.dr(c, rl), phi).scaled(qm2) + star(rl, d.dl(c, phi))).scaled(g);
          } else {
            Series l = lp(c, f, phi);
            r -= d_right(f, star(d.dr(b, psi), l) + star(psi, d.dl(b, l)).scaled(q2)).scaled(g);
          }
        }
      });
      return {r};
    }
    case GreenForm::kGreenPotentialDerived: {
      Cov d(*pot);
      Series r = kinetic_lhs(d, psi, phi).scaled(Scalar(-1));
      for (int b = 0; b < 3; ++b) {
        Series inner;
        for (int c = 0; c < 3; ++c) {
          inner += star(right_l(c, b, psi), d.dl_dn(c, phi));
          Series drc = d.dr(c, psi);
          for (int e = 0; e < 3; ++e) {
            Scalar g = metric_lower(c, e);
            if (!g.is_zero()) inner += star(right_l(e, b, drc), phi).scaled(g);
          }
        }
        r -= d_left(b, inner);
      }
      return {r};
    }
  }
  throw std::invalid_argument("unknown green form");
}

}  // namespace qkg
