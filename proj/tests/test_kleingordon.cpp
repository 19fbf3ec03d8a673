#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qkg/kleingordon.hpp"
#include "support.hpp"

using namespace qkg;
using qkg::testing::Corpus;
using qkg::testing::mono;

namespace {

const Flavor kFlavors[] = {Flavor::kPhiR, Flavor::kPhiL, Flavor::kPhiStarR, Flavor::kPhiStarL};
const Continuity kKinds[] = {Continuity::kCharge, Continuity::kEnergy, Continuity::kMomentum};
const int kX[] = {kXP, kX3, kXM};

bool passes(const Series& r) { return classify(r).verdict != Verdict::kViolation; }
bool boundary_only(const Series& r) { return classify(r).verdict == Verdict::kBoundaryOnly; }

bool all_zero(const std::vector<Series>& v) {
  for (auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Series conj_scalar(const Series& f) { return f.map_coefficients([](const Scalar& c) { return c.conj(); }); }

// classical q = 1 objects: ordinary derivatives and the classical metric
Series dcl(int b, const Series& f) { return jackson_derivative(f, kX[b], 0); }
Scalar gcl(int a, int b) { return metric_lower(a, b).eval_q1(); }
Series dcl_up(int a, const Series& f) {
  Series r;
  for (int b = 0; b < 3; ++b)
    if (!gcl(a, b).is_zero()) r += dcl(b, f).scaled(gcl(a, b));
  return r;
}
Series p_cl_square() {
  return mono({{kPP, 1}, {kPM, 1}}, Scalar(-2)) + mono({{kP3, 2}});
}

GaugePotential random_potential(Corpus& c) {
  GaugePotential p;
  p.a0 = c.poly(2, {kXP, kX3, kXM}, 3, true);
  for (auto& a : p.a) a = c.poly(2, {kXP, kX3, kXM}, 3);
  return p;
}

}  // namespace

TEST_CASE("momentum power examples") {
  CHECK(normal_ordered_momentum_power(0) == Series(1));
  Series expect = mono({{kPP, 1}, {kPM, 1}}, -Scalar::lambda_plus()) + mono({{kP3, 2}}, Scalar::q(-2));
  CHECK(momentum_square() == expect);
  Series contracted;
  for (int b = 0; b < 3; ++b) contracted += star(momentum(b), lowered_coordinate(b, kChartP));
  CHECK(momentum_square() == contracted);
  CHECK_THROWS_AS(normal_ordered_momentum_power(-1), std::invalid_argument);
}

TEST_CASE("momentum powers equal iterated star products") {
  Series it(1);
  for (int k = 1; k <= 4; ++k) {
    it = star(it, momentum_square());
    CHECK(normal_ordered_momentum_power(k) == it);
  }
}

TEST_CASE("property: p^2 is central on the momentum chart") {
  Corpus c(31);
  for (int trial = 0; trial < 20; ++trial) {
    Series f = c.poly(4, {kPP, kP3, kPM});
    CHECK(star(momentum_square(), f) == star(f, momentum_square()));
  }
}

TEST_CASE("energy series examples") {
  EnergySeries e2 = energy_series(2, 5);
  CHECK(e2.body == (momentum_square() + Series(Scalar::M(2))).scaled(Scalar::c(2)));
  CHECK(e2.body.box().b[kGP] == Box().b[kGP]);
  EnergySeries e1 = energy_series(1, 0);
  CHECK(e1.body == Series(Scalar::c() * Scalar::M()));
  // coefficient law per p-degree
  EnergySeries e = energy_series(1, 3);
  for (int k = 0; k <= 3; ++k) {
    Series part = e.body.truncated(kGP, 2 * k) - e.body.truncated(kGP, 2 * k - 1);
    Scalar coef = rational_binomial(mpq_class(1, 2), k) * Scalar::c() * Scalar::M(1 - 2 * k);
    CHECK(part == normal_ordered_momentum_power(k).scaled(coef));
  }
  CHECK_THROWS_AS(energy_series(1, -1), std::invalid_argument);
}

TEST_CASE("energy series inverse and energy-momentum relation sit on the boundary") {
  Series inv = star(energy_series(1, 3).body, energy_series(-1, 3).body) - Series(1);
  CHECK(boundary_only(inv));
  for (int k = 1; k <= 4; ++k) {
    Series r = energy_momentum_residual(k);
    CHECK(boundary_only(r));
    CHECK(r.min_degree(kGP) == 2 * k + 2);
  }
}

TEST_CASE("plane waves: conjugation and eigen residuals") {
  for (int n = 1; n <= 3; ++n) {
    WaveFunction r = plane_wave(Flavor::kPhiR, n, n), l = plane_wave(Flavor::kPhiL, n, n);
    CHECK(conjugate(r.body) == l.body);
    CHECK(l.body == star(time_phase(1, n, n), build_exponential(ExpKind::kIpX, n).body));
    CHECK(conjugate(plane_wave(Flavor::kPhiStarL, n, n).body) == plane_wave(Flavor::kPhiStarR, n, n).body);
  }
  for (Flavor f : kFlavors) {
    WaveFunction w = plane_wave(f, 3, 3);
    CHECK_MESSAGE(boundary_only(plane_wave_residual(w, kIdxTime)), flavor_name(f));
    for (int a = 0; a < 3; ++a) CHECK_MESSAGE(boundary_only(plane_wave_residual(w, a)), flavor_name(f));
  }
}

TEST_CASE("Klein-Gordon residuals on matched plane waves") {
  for (Flavor f : kFlavors) {
    WaveFunction w = plane_wave(f, 3, 3);
    CHECK_MESSAGE(boundary_only(kg_residual(w, matched_equation(f))), flavor_name(f));
  }
  CHECK(kg_operator(KGEquation::kRight, Series()).is_zero());
  WaveFunction w = plane_wave(Flavor::kPhiR, 2, 2);
  CHECK_THROWS_AS(kg_residual(w, KGEquation::kLeft), std::invalid_argument);
  // the mismatched operator is not annihilating
  CHECK(classify(kg_operator(KGEquation::kStarLeft, w.body)).verdict == Verdict::kViolation);
}

TEST_CASE("property: conjugation maps the right KG equation to the left one") {
  Corpus c(41);
  for (int trial = 0; trial < 12; ++trial) {
    Series f = c.poly(3, {kXP, kX3, kXM}, 4, true);
    CHECK(conjugate(kg_operator(KGEquation::kRight, f)) == kg_operator(KGEquation::kLeft, conjugate(f)));
    CHECK(conjugate(kg_operator(KGEquation::kStarRight, f)) == kg_operator(KGEquation::kStarLeft, conjugate(f)));
  }
}

TEST_CASE("covariant derivative examples") {
  Corpus c(5);
  Series w = c.poly(3, {kXP, kX3, kXM}, 4, true);
  GaugePotential zero;
  CHECK(covariant_derivative(kIdxTime, w, zero) == time_derivative(w));
  for (int a = 0; a < 3; ++a) {
    CHECK(covariant_derivative(a, w, zero) == d_left(a, w));
    CHECK(covariant_derivative(a, w, zero, Side::kRight) == d_right(a, w));
    CHECK(covariant_derivative_lower(a, w, zero) == d_left_lower(a, w));
  }
  GaugePotential tpot;
  tpot.a0 = Series::var(kT);
  Series wt = Series::var(kT, 3) + Series::var(kT).scaled(Scalar::q());
  Series expect = time_derivative(wt) + (Series::var(kT) * wt).scaled(Scalar::i() * Scalar::charge());
  CHECK(covariant_derivative(kIdxTime, wt, tpot) == expect);
}

TEST_CASE("gauge transformation examples") {
  Corpus c(6);
  GaugePotential pot = random_potential(c);
  Series w = c.poly(3, {kXP, kX3, kXM}, 4, true);
  GaugeTransformed id = gauge_transform(pot, w, Series(), 3);
  CHECK(id.w == w);
  CHECK(id.pot.a0 == pot.a0);
  for (int a = 0; a < 3; ++a) CHECK(id.pot.a[a] == pot.a[a]);
  GaugeTransformed lit = gauge_transform(pot, w, Series::var(kT), 3, GaugeConvention::kLiteral);
  CHECK(lit.pot.a0 == pot.a0 - Series(1));
  GaugeTransformed cov = gauge_transform(pot, w, Series::var(kT), 3);
  CHECK(cov.pot.a0 == pot.a0 - Series(Scalar::c(-1)));
  CHECK_THROWS_AS(gauge_transform(pot, w, Series::var(kXP), 3), std::invalid_argument);
}

TEST_CASE("property: gauge covariance residuals sit on the charge boundary") {
  Corpus c(7);
  std::vector<Series> chis{Series::var(kT), Series::var(kT, 2), Series::var(kT) + Series::var(kT, 2)};
  for (int trial = 0; trial < 2; ++trial) {
    GaugePotential pot = random_potential(c);
    Series w = c.poly(3, {kXP, kX3, kXM}, 4, true);
    for (auto& chi : chis)
      for (int idx : {kIdxTime, 0, 1, 2}) {
        Series r = gauge_residual(idx, pot, w, chi, 3);
        CHECK(passes(r));
        // spatial parts are exact: chi has no x-dependence and the phase is central
        if (idx == kIdxTime) {
          CHECK(boundary_only(r));
          CHECK(r.min_degree(kGE) == 4);
        } else {
          CHECK(r.is_zero());
        }
      }
    // the literal reading leaves a sub-boundary term in D0 unless c = 1
    CHECK(classify(gauge_residual(kIdxTime, pot, w, Series::var(kT), 3, GaugeConvention::kLiteral)).verdict ==
          Verdict::kViolation);
  }
}

TEST_CASE("density examples") {
  CHECK(charge_density(Series(1), Series(1)).is_zero());
  CHECK(energy_density(Series(1), Series(1)) == Series(Scalar::frac(1, 2) * Scalar::M(2)));
  for (Continuity k : kKinds) CHECK(all_zero(continuity_residual(k, Series(), Series())));
  GaugePotential pot;
  pot.a0 = Series::var(kT);
  Series psi = Series::var(kXP), phi = Series::var(kXM);
  // -e^2/Mc^2 psi A0 phi is the only change for a static pair
  Series expect = (Series::var(kT) * psi * phi).scaled(-Scalar::charge(2) / (Scalar::M() * Scalar::c()));
  CHECK(charge_density(psi, phi, &pot) - charge_density(psi, phi) == expect);
}

TEST_CASE("property: continuity residuals equal their KG form") {
  Corpus c(8);
  for (int trial = 0; trial < 4; ++trial) {
    Series psi = c.poly(3, {kXP, kX3, kXM}, 3, true), phi = c.poly(3, {kXP, kX3, kXM}, 3, true);
    for (Continuity k : kKinds) {
      auto r = continuity_residual(k, psi, phi), g = continuity_kg_form(k, psi, phi);
      REQUIRE(r.size() == g.size());
      for (std::size_t i = 0; i < r.size(); ++i) CHECK_MESSAGE(r[i] == g[i], continuity_name(k));
    }
  }
}

TEST_CASE("continuity residuals on plane waves sit on the boundary") {
  Series psi = plane_wave(Flavor::kPhiStarL, 2, 2).body, phi = plane_wave(Flavor::kPhiR, 2, 2).body;
  for (Continuity k : kKinds)
    for (auto& r : continuity_residual(k, psi, phi)) CHECK_MESSAGE(passes(r), continuity_name(k));
  Series phl = conjugate(phi), psr = conjugate(psi);
  for (Continuity k : kKinds)
    for (auto& r : continuity_residual_star(k, phl, psr)) CHECK_MESSAGE(passes(r), continuity_name(k));
}

TEST_CASE("property: densities conjugate onto their starred forms") {
  Corpus c(9);
  for (int trial = 0; trial < 3; ++trial) {
    Series psi = c.poly(3, {kXP, kX3, kXM}, 3, true), phi = c.poly(3, {kXP, kX3, kXM}, 3, true);
    Series phl = conjugate(phi), psr = conjugate(psi);
    CHECK(conjugate(charge_density_raw(psi, phi)) == -charge_density_star(phl, psr));
    CHECK(conjugate(energy_density(psi, phi)) == energy_density_star(phl, psr));
    Family j = current_density_raw(psi, phi), js = current_density_star(phl, psr);
    Family s = energy_flux(psi, phi), ss = energy_flux_star(phl, psr);
    Family m = momentum_density(psi, phi), ms = momentum_density_star(phl, psr);
    auto t = stress_tensor(psi, phi), ts = stress_tensor_star(phl, psr);
    for (int a = 0; a < 3; ++a) {
      CHECK(conjugate(j[a]) == -js[a]);
      CHECK(conjugate(s[a]) == ss[a]);
      CHECK(conjugate(m[a]) == ms[a]);
      for (int d = 0; d < 3; ++d) CHECK(conjugate(t[a][d]) == ts[a][d]);
    }
    auto rc = continuity_residual(Continuity::kCharge, psi, phi);
    CHECK(continuity_residual_star(Continuity::kCharge, phl, psr)[0] == -conjugate(rc[0]));
    for (Continuity k : {Continuity::kEnergy, Continuity::kMomentum}) {
      auto r = continuity_residual(k, psi, phi), rs = continuity_residual_star(k, phl, psr);
      for (std::size_t i = 0; i < r.size(); ++i) CHECK(conjugate(r[i]) == rs[i]);
    }
  }
}

TEST_CASE("q = 1 densities are the classical ones") {
  Corpus c(10);
  const Scalar half = Scalar::frac(1, 2);
  for (int trial = 0; trial < 4; ++trial) {
    Series psi = c.poly(3, {kXP, kX3, kXM}, 3, true), phi = c.poly(3, {kXP, kX3, kXM}, 3, true);
    Series psi1 = classical_limit(psi), phi1 = classical_limit(phi);
    Series dpsi = time_derivative(psi1), dphi = time_derivative(phi1);
    CHECK(classical_limit(charge_density_raw(psi, phi)) == psi1 * dphi - dpsi * phi1);
    // classical energy density 1/2 c^-2 dt psi dt phi + 1/2 grad psi . grad phi + 1/2 M^2 psi phi
    Series h = (dpsi * dphi).scaled(half * Scalar::c(-2)) + (psi1 * phi1).scaled(half * Scalar::M(2));
    for (int a = 0; a < 3; ++a) h += (dcl_up(a, psi1) * dcl(a, phi1)).scaled(half);
    CHECK(classical_limit(energy_density(psi, phi)) == h);
  }
}

TEST_CASE("Green identities without potentials are exact") {
  const GreenForm forms[] = {GreenForm::kGreen0,     GreenForm::kGreen1,
                             GreenForm::kRearrange1, GreenForm::kRearrange2,
                             GreenForm::kLMatrixDerivative, GreenForm::kLMatrixCommute};
  for (GreenForm f : forms) {
    CHECK(all_zero(green_identity_residual(f, Series(1), Series(1))));
    CHECK_MESSAGE(all_zero(green_identity_residual(f, Series::var(kXP), Series::var(kXM))), green_form_name(f));
  }
  Corpus c(11);
  for (int trial = 0; trial < 3; ++trial) {
    Series psi = c.poly(4, {kXP, kX3, kXM}, 4, true), phi = c.poly(4, {kXP, kX3, kXM}, 4, true);
    for (GreenForm f : forms) CHECK_MESSAGE(all_zero(green_identity_residual(f, psi, phi)), green_form_name(f));
  }
  CHECK_THROWS_AS(green_identity_residual(GreenForm::kGreenPotentialDerived, Series(1), Series(1)),
                  std::invalid_argument);
}

TEST_CASE("Green identity with potentials") {
  Corpus c(12);
  GaugePotential zero;
  for (int trial = 0; trial < 3; ++trial) {
    Series psi = c.poly(3, {kXP, kX3, kXM}, 3, true), phi = c.poly(3, {kXP, kX3, kXM}, 3, true);
    GaugePotential pot = random_potential(c);
    CHECK(all_zero(green_identity_residual(GreenForm::kGreenPotentialDerived, psi, phi, &pot)));
    for (GreenForm f : {GreenForm::kGreenPotentialPrinted1, GreenForm::kGreenPotentialPrinted2}) {
      CHECK(all_zero(green_identity_residual(f, psi, phi, &zero)));
      // the printed right-hand sides miss the potential cross terms
      CHECK_FALSE(all_zero(green_identity_residual(f, psi, phi, &pot)));
    }
  }
}

TEST_CASE("propagator examples") {
  Scalar dinv = (Scalar::E(2) - Scalar::c(2) * Scalar::M(2)).inverse();
  CHECK(propagator_momentum_residual(0) == momentum_square().scaled(-Scalar::c(2) * dinv));
  for (int k = 1; k <= 3; ++k) CHECK(boundary_only(propagator_momentum_residual(k)));
  for (int k = 0; k <= 3; ++k) CHECK(propagator_series(k) == -propagator_left(k));
  // q = 1: sum c^2k (p^2_cl)^k / D^(k+1)
  Series cl, pw(1);
  for (int k = 0; k <= 3; ++k) {
    cl += pw.scaled(Scalar::c(2 * k) * dinv.pow(k + 1));
    pw = pw * p_cl_square();
  }
  CHECK(classical_limit(propagator_series(3)) == cl);
  CHECK_THROWS_AS(propagator_series(-1), std::invalid_argument);
}
