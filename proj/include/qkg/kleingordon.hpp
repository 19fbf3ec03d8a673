#pragma once
// Klein-Gordon layer: energy series, normalization-free plane waves, the four
// equation variants, gauge covariance, densities with their continuity
// residuals, Green-type identities and the momentum-space propagator.
//
// Densities take a left field psi (the phi*_L slot) and a right field phi
// (the phi_R slot). The starred versions take phi_L = conj(phi) and
// psi_R = conj(psi), in that order.

#include <vector>

#include "qkg/qexp.hpp"

namespace qkg {

Series normal_ordered_momentum_power(int k);  // (p^2)^k on the momentum chart
inline Series momentum_square() { return normal_ordered_momentum_power(1); }

struct EnergySeries {
  int two_alpha;
  int order;
  Series body;  // exact when the binomial series terminates, else box P = 2K+2
};
EnergySeries energy_series(int two_alpha, int order);
// c^-2 E (*) E - p^2 - M^2
Series energy_momentum_residual(int order);

// sum_{n <= nt} (sign i t)^n / n! E^n
Series time_phase(int sign, int nt, int k);

enum class Flavor { kPhiR, kPhiL, kPhiStarR, kPhiStarL };
const char* flavor_name(Flavor f);
struct WaveFunction {
  Flavor flavor;
  int n = 0, k = 0;
  Series body;
};
WaveFunction plane_wave(Flavor flavor, int n, int k);
// i d_t w - w (*) E for left flavors, i (w <| d_t) - E (*) w for right ones;
// spatial index: the momentum eigenvalue contract of the matched action
Series plane_wave_residual(const WaveFunction& w, int index);

// Equation selectors by action: |> , <|bar, |>bar, <|
enum class KGEquation { kRight, kLeft, kStarRight, kStarLeft };
const char* equation_name(KGEquation e);
KGEquation matched_equation(Flavor f);
Series kg_operator(KGEquation eq, const Series& f);
// throws std::invalid_argument when the flavor does not match
Series kg_residual(const WaveFunction& w, KGEquation eq);

// Gauge potentials and covariant derivatives. The charge is the symbol e.
struct GaugePotential {
  Series a0;
  Family a;  // A^C, raised index
};
// index kIdxTime gives D^0, a spatial index D^C; the right form acts from the right
Series covariant_derivative(int index, const Series& w, const GaugePotential& pot, Side side = Side::kLeft);
Series covariant_derivative_lower(int index, const Series& w, const GaugePotential& pot, Side side = Side::kLeft);

// kCovariant: A0 - c^-1 d_t chi, which matches the phase exp(i e c^-1 chi).
// kLiteral: A0 - d_t chi as printed; covariant only for c = 1.
enum class GaugeConvention { kCovariant, kLiteral };
struct GaugeTransformed {
  GaugePotential pot;
  Series w;
  Series phase;  // exp(i e c^-1 chi) to the given order, box on the e-degree
};
// chi must depend on t only
GaugeTransformed gauge_transform(const GaugePotential& pot, const Series& w, const Series& chi, int order,
                                 GaugeConvention conv = GaugeConvention::kCovariant);
// Dtilde w~ - phase (*) D w for the given index
Series gauge_residual(int index, const GaugePotential& pot, const Series& w, const Series& chi, int order,
                      GaugeConvention conv = GaugeConvention::kCovariant);

// Right L-action psi <| L^C_B used by the density formulas.
inline Series right_l(int c, int b, const Series& psi) { return right_l_action(c, b, psi); }

// Densities. "Raw" forms carry no physical prefactor.
Series charge_density_raw(const Series& psi, const Series& phi);
Family current_density_raw(const Series& psi, const Series& phi);
// rho = (ie/2Mc) [psi (*) D0 phi + (psi <| D0) (*) phi]; without a potential
// D0 is d_t. j_A = -(iec/2M) j'_A.
Series charge_density(const Series& psi, const Series& phi, const GaugePotential* pot = nullptr);
Family current_density(const Series& psi, const Series& phi, const GaugePotential* pot = nullptr);
Series energy_density(const Series& psi, const Series& phi);
Family energy_flux(const Series& psi, const Series& phi);
Family momentum_density(const Series& psi, const Series& phi);
std::array<Family, 3> stress_tensor(const Series& psi, const Series& phi);  // [A][D]

Series charge_density_star(const Series& phi_l, const Series& psi_r);  // rho*
Family current_density_star(const Series& phi_l, const Series& psi_r);
Series energy_density_star(const Series& phi_l, const Series& psi_r);
Family energy_flux_star(const Series& phi_l, const Series& psi_r);
Family momentum_density_star(const Series& phi_l, const Series& psi_r);
std::array<Family, 3> stress_tensor_star(const Series& phi_l, const Series& psi_r);

enum class Continuity { kCharge, kEnergy, kMomentum };
const char* continuity_name(Continuity c);
// d_t(density) + d^A |> flux_A in raw normalization (one entry, three for momentum)
std::vector<Series> continuity_residual(Continuity kind, const Series& psi, const Series& phi);
// the same residuals written through the KG operators; equal to the above for
// arbitrary inputs
std::vector<Series> continuity_kg_form(Continuity kind, const Series& psi, const Series& phi);
// conjugated suite: equals the conjugate of continuity_residual (up to the
// sign of the charge case)
std::vector<Series> continuity_residual_star(Continuity kind, const Series& phi_l, const Series& psi_r);

// Green-type identities as LHS - RHS, one entry per free index.
enum class GreenForm {
  kGreen0,
  kGreen1,
  kRearrange1,
  kRearrange2,
  kLMatrixDerivative,  // sum_B [psi (*) L phi] <| d^B + d^B |> [psi <| L (*) phi]
  kLMatrixCommute,     // g_BD d^B L^D_C - q^-2 g_BD L^B_C d^D
  kGreenPotentialPrinted1,
  kGreenPotentialPrinted2,
  kGreenPotentialDerived,
};
const char* green_form_name(GreenForm f);
bool green_form_uses_potential(GreenForm f);
std::vector<Series> green_identity_residual(GreenForm form, const Series& psi, const Series& phi,
                                            const GaugePotential* pot = nullptr);

// Momentum-space propagator: sum_{k<=K} c^{2k} (p^2)^k (E^2 - c^2 M^2)^{-(k+1)}
Series propagator_series(int k);
// the same operator from the left-multiplication recursion with the opposite sign
Series propagator_left(int k);
// (E^2 - E_p^2) (*) Delta - 1
Series propagator_momentum_residual(int k);

}  // namespace qkg
