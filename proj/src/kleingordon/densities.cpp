#include <stdexcept>

#include "qkg/kleingordon.hpp"

namespace qkg {

namespace {

const Scalar& half() {
  static const Scalar h = Scalar::frac(1, 2);
  return h;
}

Series dt(const Series& f) { return time_derivative(f); }
Series rdt(const Series& f) { return -time_derivative(f); }
Series lb(int a, int b, const Series& u) { return l_matrix_action(Calculus::kHatted, a, b, u); }

// sum g_AB bd(A, bd(B, f))
Series laplacian_bar(const Series& f) {
  Series r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(a, b);
      if (!g.is_zero()) r += d_left_bar(a, d_left_bar(b, f)).scaled(g);
    }
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

Family current_with(const Series& psi, const Series& phi, const GaugePotential* pot) {
  Family j;
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      Series rl = right_l(c, a, psi);
      Series rdn = pot ? covariant_derivative_lower(c, rl, *pot, Side::kRight) : d_right_lower(c, rl);
      Series ldn = pot ? covariant_derivative_lower(c, phi, *pot) : d_left_lower(c, phi);
      j[std::size_t(a)] += star(rdn, phi).scaled(Scalar::q(-2)) + star(rl, ldn);
    }
  return j;
}

Series stress_entry(const Series& psi, const Series& phi, int a, int d) {
  Series t;
  Series rda = d_right(a, psi);
  for_metric([&](int b, int c, const Scalar& g) {
    t -= star(right_l(c, d, d_right(b, rda)), phi).scaled(half() * g);
  });
  Series rad = right_l(a, d, psi);
  t += star(laplacian_right(rad), phi).scaled(half() * Scalar::q(4));
  t -= star(rad, phi).scaled(half() * Scalar::M(2));
  for (int b = 0; b < 3; ++b) t -= star(right_l(b, d, rda), d_left_lower(b, phi)).scaled(half());
  t -= star(right_l(a, d, rdt(psi)), dt(phi)).scaled(half() * Scalar::c(-2));
  return t;
}

Series stress_entry_star(const Series& phl, const Series& psr, int a, int d) {
  Series r;
  Series bda = d_left_bar_lower(a, psr);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      Scalar g2 = metric_upper(c, d);
      if (g2.is_zero()) continue;
      r -= star(phl, lb(b, c, d_left_bar_lower(b, bda))).scaled(half() * g2);
    }
  for (int e = 0; e < 3; ++e) {
    Scalar g1 = metric_lower(a, e);
    if (g1.is_zero()) continue;
    for (int c = 0; c < 3; ++c) {
      Scalar g2 = metric_upper(c, d);
      if (g2.is_zero()) continue;
      Series l = lb(e, c, psr);
      r += star(phl, laplacian_bar(l)).scaled(half() * Scalar::q(4) * g1 * g2);
      r -= star(phl, l).scaled(half() * Scalar::M(2) * g1 * g2);
      r -= star(rdt(phl), lb(e, c, dt(psr))).scaled(half() * Scalar::c(-2) * g1 * g2);
    }
  }
  for_metric([&](int b, int e, const Scalar& g1) {
    Series rb = d_right_bar(b, phl);
    for (int c = 0; c < 3; ++c) {
      Scalar g2 = metric_upper(c, d);
      if (!g2.is_zero()) r -= star(rb, lb(e, c, bda)).scaled(half() * g1 * g2);
    }
  });
  return r;
}

}  // namespace

Series charge_density_raw(const Series& psi, const Series& phi) {
  return star(psi, dt(phi)) + star(rdt(psi), phi);
}

Family current_density_raw(const Series& psi, const Series& phi) { return current_with(psi, phi, nullptr); }

Series charge_density(const Series& psi, const Series& phi, const GaugePotential* pot) {
  Series raw = pot ? star(psi, covariant_derivative(kIdxTime, phi, *pot)) +
                         star(covariant_derivative(kIdxTime, psi, *pot, Side::kRight), phi)
                   : charge_density_raw(psi, phi);
  Scalar pre = Scalar::i() * Scalar::charge() / (Scalar(2) * Scalar::M() * Scalar::c());
  return raw.scaled(pre);
}

Family current_density(const Series& psi, const Series& phi, const GaugePotential* pot) {
  Family j = current_with(psi, phi, pot);
  Scalar pre = -(Scalar::i() * Scalar::charge() * Scalar::c()) / (Scalar(2) * Scalar::M());
  for (auto& x : j) x = x.scaled(pre);
  return j;
}

Series energy_density(const Series& psi, const Series& phi) {
  Series h = star(rdt(psi), dt(phi)).scaled(-half() * Scalar::c(-2));
  for (int c = 0; c < 3; ++c) h -= star(d_right(c, psi), d_left_lower(c, phi)).scaled(half());
  h += star(psi, phi).scaled(half() * Scalar::M(2));
  return h;
}

Family energy_flux(const Series& psi, const Series& phi) {
  Family s;
  Series rpsi = rdt(psi), dphi = dt(phi);
  for (int c = 0; c < 3; ++c)
    for (int b = 0; b < 3; ++b) {
      s[std::size_t(c)] += star(right_l(b, c, rpsi), d_left_lower(b, phi)).scaled(half());
      s[std::size_t(c)] += star(d_right_lower(b, right_l(b, c, psi)), dphi).scaled(half() * Scalar::q(-2));
    }
  return s;
}

Family momentum_density(const Series& psi, const Series& phi) {
  Family m;
  for (int a = 0; a < 3; ++a)
    m[std::size_t(a)] = (star(rdt(psi), d_left(a, phi)) + star(d_right(a, psi), dt(phi))).scaled(half() * Scalar::c(-2));
  return m;
}

std::array<Family, 3> stress_tensor(const Series& psi, const Series& phi) {
  std::array<Family, 3> t;
  for (int a = 0; a < 3; ++a)
    for (int d = 0; d < 3; ++d) t[std::size_t(a)][std::size_t(d)] = stress_entry(psi, phi, a, d);
  return t;
}

Series charge_density_star(const Series& phl, const Series& psr) { return star(phl, dt(psr)) + star(rdt(phl), psr); }

Family current_density_star(const Series& phl, const Series& psr) {
  Family j;
  for (int a = 0; a < 3; ++a)
    for_metric([&](int c, int d, const Scalar& g1) {
      Series rc = d_right_bar(c, phl);
      for (int e = 0; e < 3; ++e) {
        Scalar g2 = metric_upper(e, a);
        if (g2.is_zero()) continue;
        Series l = lb(d, e, psr);
        j[std::size_t(a)] += star(phl, d_left_bar(c, l)).scaled(Scalar::q(-2) * g1 * g2) + star(rc, l).scaled(g1 * g2);
      }
    });
  return j;
}

Series energy_density_star(const Series& phl, const Series& psr) {
  Series h = star(rdt(phl), dt(psr)).scaled(-half() * Scalar::c(-2));
  for (int c = 0; c < 3; ++c) h -= star(d_right_bar(c, phl), d_left_bar_lower(c, psr)).scaled(half());
  h += star(phl, psr).scaled(half() * Scalar::M(2));
  return h;
}

Family energy_flux_star(const Series& phl, const Series& psr) {
  Family s;
  Series dpsr = dt(psr), rphl = rdt(phl);
  for (int cc = 0; cc < 3; ++cc)
    for_metric([&](int b, int d, const Scalar& g1) {
      Series rb = d_right_bar(b, phl);
      for (int e = 0; e < 3; ++e) {
        Scalar g2 = metric_upper(e, cc);
        if (g2.is_zero()) continue;
        s[std::size_t(cc)] += star(rb, lb(d, e, dpsr)).scaled(half() * g1 * g2);
        s[std::size_t(cc)] += star(rphl, d_left_bar(b, lb(d, e, psr))).scaled(half() * Scalar::q(-2) * g1 * g2);
      }
    });
  return s;
}

Family momentum_density_star(const Series& phl, const Series& psr) {
  Family m;
  for (int a = 0; a < 3; ++a)
    m[std::size_t(a)] = (star(rdt(phl), d_left_bar_lower(a, psr)) + star(d_right_bar_lower(a, phl), dt(psr)))
                            .scaled(half() * Scalar::c(-2));
  return m;
}

std::array<Family, 3> stress_tensor_star(const Series& phl, const Series& psr) {
  std::array<Family, 3> t;
  for (int a = 0; a < 3; ++a)
    for (int d = 0; d < 3; ++d) t[std::size_t(a)][std::size_t(d)] = stress_entry_star(phl, psr, a, d);
  return t;
}

const char* continuity_name(Continuity c) {
  switch (c) {
    case Continuity::kCharge: return "charge";
    case Continuity::kEnergy: return "energy";
    case Continuity::kMomentum: return "momentum";
  }
  return "?";
}

std::vector<Series> continuity_residual(Continuity kind, const Series& psi, const Series& phi) {
  switch (kind) {
    case Continuity::kCharge: {
      Series r = dt(charge_density_raw(psi, phi)).scaled(Scalar::c(-2));
      Family j = current_density_raw(psi, phi);
      for (int a = 0; a < 3; ++a) r -= d_left(a, j[std::size_t(a)]);
      return {r};
    }
    case Continuity::kEnergy: {
      Series r = dt(energy_density(psi, phi));
      Family s = energy_flux(psi, phi);
      for (int c = 0; c < 3; ++c) r += d_left(c, s[std::size_t(c)]);
      return {r};
    }
    case Continuity::kMomentum: {
      Family m = momentum_density(psi, phi);
      std::vector<Series> out;
      for (int a = 0; a < 3; ++a) {
        Series r = dt(m[std::size_t(a)]);
        for (int d = 0; d < 3; ++d) r += d_left(d, stress_entry(psi, phi, a, d));
        out.push_back(r);
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown continuity kind");
}

std::vector<Series> continuity_kg_form(Continuity kind, const Series& psi, const Series& phi) {
  Series kr = kg_operator(KGEquation::kRight, phi), kl = kg_operator(KGEquation::kStarLeft, psi);
  switch (kind) {
    case Continuity::kCharge: return {star(psi, kr) - star(kl, phi)};
    case Continuity::kEnergy: return {(star(kl, dt(phi)) - star(rdt(psi), kr)).scaled(half())};
    case Continuity::kMomentum: {
      std::vector<Series> out;
      for (int a = 0; a < 3; ++a)
        out.push_back((star(d_right(a, psi), kr) - star(kl, d_left(a, phi))).scaled(half()));
      return out;
    }
  }
  throw std::invalid_argument("unknown continuity kind");
}

std::vector<Series> continuity_residual_star(Continuity kind, const Series& phl, const Series& psr) {
  switch (kind) {
    case Continuity::kCharge: {
      Series r = dt(charge_density_star(phl, psr)).scaled(Scalar::c(-2));
      Family j = current_density_star(phl, psr);
      for_metric([&](int a, int b, const Scalar& g) { r += d_right_bar(b, j[std::size_t(a)]).scaled(g); });
      return {r};
    }
    case Continuity::kEnergy: {
      Series r = dt(energy_density_star(phl, psr));
      Family s = energy_flux_star(phl, psr);
      for_metric([&](int c, int b, const Scalar& g) { r -= d_right_bar(b, s[std::size_t(c)]).scaled(g); });
      return {r};
    }
    case Continuity::kMomentum: {
      Family m = momentum_density_star(phl, psr);
      std::vector<Series> out;
      for (int a = 0; a < 3; ++a) {
        Series r = dt(m[std::size_t(a)]);
        for (int d = 0; d < 3; ++d) {
          Series t = stress_entry_star(phl, psr, a, d);
          for (int b = 0; b < 3; ++b) {
            Scalar g = metric_upper(d, b);
            if (!g.is_zero()) r -= d_right_bar(b, t).scaled(g);
          }
        }
        out.push_back(r);
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown continuity kind");
}

}  // namespace qkg
