#include <map>
#include <mutex>
#include <stdexcept>

#include "qkg/kleingordon.hpp"

namespace qkg {

namespace {

Series t_power(int n) { return Series::var(kT, n); }

Box p_box(int bound) {
  Box b;
  b.b[kGP] = bound;
  return b;
}

}  // namespace

Series normal_ordered_momentum_power(int k) {
  if (k < 0) throw std::invalid_argument("momentum power must be non-negative");
  static std::mutex mu;
  static std::map<int, Series> cache;
  std::lock_guard lk(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<Series::Term> t;
  const Scalar mlp = -Scalar::lambda_plus();
  for (int l = 0; l <= k; ++l) {
    std::array<int, kNumVars> e{};
    e[kPP] = e[kPM] = k - l;
    e[kP3] = 2 * l;
    t.emplace_back(key_make(e), Scalar::q(-2 * l) * mlp.pow(k - l) * q_binomial(k, l, 4));
  }
  return cache.emplace(k, Series::from_terms(std::move(t))).first->second;
}

EnergySeries energy_series(int two_alpha, int order) {
  if (order < 0) throw std::invalid_argument("energy series order must be non-negative");
  mpq_class alpha(two_alpha, 2);
  alpha.canonicalize();
  Series r;
  bool terminates = false;
  for (int k = 0; k <= order; ++k) {
    Scalar b = rational_binomial(alpha, k);
    if (b.is_zero()) {
      terminates = true;
      break;
    }
    r += normal_ordered_momentum_power(k).scaled(b * Scalar::c(two_alpha) * Scalar::M(two_alpha - 2 * k));
  }
  if (!terminates && rational_binomial(alpha, order + 1).is_zero()) terminates = true;
  if (!terminates) r.set_box(p_box(2 * order + 2));
  return {two_alpha, order, r};
}

Series energy_momentum_residual(int order) {
  Series e = energy_series(1, order).body;
  return star(e, e).scaled(Scalar::c(-2)) - momentum_square() - Series(Scalar::M(2));
}

Series time_phase(int sign, int nt, int k) {
  Series r;
  Scalar fact(1);
  const Scalar it = Scalar::i() * Scalar(sign);
  Box box;
  for (int n = 0; n <= nt; ++n) {
    if (n) fact *= Scalar(n);
    EnergySeries e = energy_series(n, k);
    box = box.meet(e.body.box());
    r += (t_power(n) * e.body).scaled(it.pow(n) / fact);
  }
  box.b[kGT] = nt + 1;
  r.set_box(box);
  return r;
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::kPhiR: return "phi_R";
    case Flavor::kPhiL: return "phi_L";
    case Flavor::kPhiStarR: return "phi*_R";
    case Flavor::kPhiStarL: return "phi*_L";
  }
  return "?";
}

WaveFunction plane_wave(Flavor flavor, int n, int k) {
  Series body;
  switch (flavor) {
    case Flavor::kPhiR:
    case Flavor::kPhiL:
      body = star(build_exponential(ExpKind::kXIp, n).body, time_phase(-1, n, k));
      break;
    case Flavor::kPhiStarR:
    case Flavor::kPhiStarL:
      body = star(time_phase(1, n, k), build_exponential(ExpKind::kStarIpX, n).body);
      break;
  }
  if (flavor == Flavor::kPhiL || flavor == Flavor::kPhiStarR) body = conjugate(body);
  return {flavor, n, k, body};
}

static bool left_flavor(Flavor f) { return f == Flavor::kPhiR || f == Flavor::kPhiStarR; }

Series plane_wave_residual(const WaveFunction& w, int index) {
  const Scalar i = Scalar::i();
  if (index == kIdxTime) {
    Series e = energy_series(1, w.k).body;
    if (left_flavor(w.flavor)) return time_derivative(w.body).scaled(i) - star(w.body, e);
    return time_derivative(w.body).scaled(-i) - star(e, w.body);
  }
  if (index < 0 || index > 2) throw std::invalid_argument("plane_wave_residual: bad index");
  Series d;
  switch (w.flavor) {
    case Flavor::kPhiR: d = d_left(index, w.body); break;
    case Flavor::kPhiL: d = d_right_bar(index, w.body); break;
    case Flavor::kPhiStarR: d = d_left_bar(index, w.body); break;
    case Flavor::kPhiStarL: d = d_right(index, w.body); break;
  }
  Series p = momentum(index);
  return d.scaled(i.inverse()) - (left_flavor(w.flavor) ? star(w.body, p) : star(p, w.body));
}

const char* equation_name(KGEquation e) {
  switch (e) {
    case KGEquation::kRight: return "left-plain";
    case KGEquation::kLeft: return "right-bar";
    case KGEquation::kStarRight: return "left-bar";
    case KGEquation::kStarLeft: return "right-hatted";
  }
  return "?";
}

KGEquation matched_equation(Flavor f) {
  switch (f) {
    case Flavor::kPhiR: return KGEquation::kRight;
    case Flavor::kPhiL: return KGEquation::kLeft;
    case Flavor::kPhiStarR: return KGEquation::kStarRight;
    case Flavor::kPhiStarL: return KGEquation::kStarLeft;
  }
  throw std::invalid_argument("unknown flavor");
}

Series kg_operator(KGEquation eq, const Series& f) {
  bool right = eq == KGEquation::kLeft || eq == KGEquation::kStarLeft;
  Series tt = time_derivative(time_derivative(f));  // two sign flips cancel for right actions
  ActionFn d;
  switch (eq) {
    case KGEquation::kRight: d = d_left; break;
    case KGEquation::kLeft: d = d_right_bar; break;
    case KGEquation::kStarRight: d = d_left_bar; break;
    case KGEquation::kStarLeft: d = d_right; break;
  }
  Series lap;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(a, b);
      if (g.is_zero()) continue;
      lap += (right ? d(b, d(a, f)) : d(a, d(b, f))).scaled(g);
    }
  return tt.scaled(Scalar::c(-2)) - lap + f.scaled(Scalar::M(2));
}

Series kg_residual(const WaveFunction& w, KGEquation eq) {
  if (matched_equation(w.flavor) != eq)
    throw std::invalid_argument(std::string("equation ") + equation_name(eq) + " does not act on " +
                                flavor_name(w.flavor));
  return kg_operator(eq, w.body);
}

Series propagator_series(int k) {
  if (k < 0) throw std::invalid_argument("propagator order must be non-negative");
  Scalar dinv = (Scalar::E(2) - Scalar::c(2) * Scalar::M(2)).inverse();
  Series r;
  for (int j = 0; j <= k; ++j) r += normal_ordered_momentum_power(j).scaled(Scalar::c(2 * j) * dinv.pow(j + 1));
  r.set_box(p_box(2 * k + 2));
  return r;
}

Series propagator_left(int k) {
  if (k < 0) throw std::invalid_argument("propagator order must be non-negative");
  // X (*) (E_p^2 - E^2) = 1, i.e. X = -D^-1 + c^2 X (*) p^2 D^-1
  Scalar dinv = (Scalar::E(2) - Scalar::c(2) * Scalar::M(2)).inverse();
  Series p2 = momentum_square(), x;
  for (int j = 0; j <= k; ++j) {
    x = Series(-dinv) + star(x, p2).scaled(Scalar::c(2) * dinv);
    x = x.truncated(kGP, 2 * k);
  }
  x.set_box(p_box(2 * k + 2));
  return x;
}

Series propagator_momentum_residual(int k) {
  Series delta = propagator_series(k);
  Series ep2 = energy_series(2, 1).body;  // exact: c^2 (p^2 + M^2)
  return delta.scaled(Scalar::E(2)) - star(ep2, delta) - Series(1);
}

}  // namespace qkg
