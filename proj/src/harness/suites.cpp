#include "audit_detail.hpp"
#include "qkg/harness.hpp"

namespace qkg {

namespace {

using Rng = std::mt19937_64;
const int kXVars[] = {kXP, kX3, kXM};
const int kYVars[] = {kYP, kY3, kYM};
const ExpKind kKinds[] = {ExpKind::kXIp,    ExpKind::kIpX,     ExpKind::kBarXIp,
                          ExpKind::kBarIpX, ExpKind::kStarIpX, ExpKind::kStarXIp};
const Flavor kFlavors[] = {Flavor::kPhiR, Flavor::kPhiL, Flavor::kPhiStarR, Flavor::kPhiStarL};

std::vector<Series> concat(std::vector<Series> a, const std::vector<Series>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Series x(int v, int e = 1) { return Series::var(v, e); }

// ---- classical (q = 1) oracles ----

Series partial(const Series& f, int var) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms())
    if (int n = key_exp(k, var)) t.emplace_back(k - key_var(var), c * Scalar(n));
  return Series::from_terms(std::move(t), f.box());
}

Series pairing_cl() { return -(x(kXP) * x(kPM)) + x(kX3) * x(kP3) - x(kXM) * x(kPP); }
Series p_square_cl() { return (x(kPP) * x(kPM)).scaled(Scalar(-2)) + x(kP3, 2); }

Series exp_cl(const Series& arg, int n) {
  Series r(1), pw(1);
  Scalar fact(1);
  for (int j = 1; j <= n; ++j) {
    pw = pw * arg;
    fact *= Scalar(j);
    r += pw.scaled(fact.inverse());
  }
  return r;
}

Series shifted_cl(const Series& f) {  // f(x + y)
  Series r;
  for (auto& [k, c] : f.terms()) {
    Series m(c);
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < key_exp(k, kXVars[a]); ++j) m = m * (x(kXVars[a]) + x(kYVars[a]));
    r += m;
  }
  return r;
}

// ---- suites ----

Series generator_expected(int a, int b) {
  if (a <= b) return x(kXVars[a]) * x(kXVars[b]);
  if (a == 1 && b == 0) return (x(kXP) * x(kX3)).scaled(Scalar::q(2));
  if (a == 2 && b == 1) return (x(kX3) * x(kXM)).scaled(Scalar::q(2));
  return x(kXP) * x(kXM) + x(kX3, 2).scaled(Scalar::lambda());
}

CaseOutcome star_algebra(const SuiteConfig& cfg, int i, Rng& rng) {
  if (i < 9) {
    int a = i / 3, b = i % 3;
    std::string nm = std::string("x") + index_name(a) + " * x" + index_name(b);
    return {"generator " + nm, {nm}, {star(x(kXVars[a]), x(kXVars[b])) - generator_expected(a, b)}};
  }
  CaseCorpus c(rng);
  std::vector<int> vars{kXP, kX3, kXM, kPP, kP3, kPM, kT};
  int d1 = c.pick(0, cfg.order), d2 = c.pick(0, cfg.order - d1), d3 = cfg.order - d1 - d2;
  Series f = c.monomial(d1, vars), g = c.monomial(d2, vars), h = c.monomial(d3, vars);
  std::vector<Series> r;
  for (Ordering o : {Ordering::kStandard, Ordering::kReversed})
    r.push_back(star(star(f, g, o), h, o) - star(f, star(g, h, o), o));
  return {"associativity", {f.str(), g.str(), h.str()}, r};
}

CaseOutcome conjugation(const SuiteConfig& cfg, int, Rng& rng) {
  CaseCorpus c(rng);
  Series f = c.xpoly(cfg.order, 4, true), g = c.xpoly(cfg.order, 4, true);
  std::vector<Series> r{conjugate(conjugate(f)) - f, conjugate(star(f, g)) - star(conjugate(g), conjugate(f))};
  for (int a = 0; a <= kIdxTime; ++a) {
    r.push_back(conjugate(d_left(a, conjugate(f))) + d_right_bar_lower(a, f));
    r.push_back(conjugate(dhat_left(a, conjugate(f))) + dhat_right_lower(a, f));
  }
  return {"conjugation", {f.str(), g.str()}, r};
}

CaseOutcome leibniz(const SuiteConfig& cfg, int, Rng& rng) {
  CaseCorpus c(rng);
  Series u = c.xpoly(cfg.order, 3, true), g = c.xpoly(cfg.order, 3, true);
  std::vector<Series> r;
  for (Calculus calc : {Calculus::kPlain, Calculus::kHatted}) {
    ActionFn d = action_fn(Side::kLeft, calc);
    for (int a = 0; a < 3; ++a) {
      Series s = d(a, star(u, g)) - star(d(a, u), g);
      for (int b = 0; b < 3; ++b) s -= star(extract_l(d, Ordering::kStandard, a, b, u), d(b, g));
      r.push_back(s);
    }
  }
  r = concat(r, green_identity_residual(GreenForm::kLMatrixCommute, u, g));
  r = concat(r, green_identity_residual(GreenForm::kLMatrixDerivative, u, g));
  return {"leibniz", {u.str(), g.str()}, r};
}

GaugePotential random_potential(CaseCorpus& c) {
  GaugePotential p;
  for (;;) {
    p.a0 = c.xpoly(2, 3, true);
    for (auto& a : p.a) a = c.xpoly(2, 3);
    if (!p.a0.is_zero() && !p.a[0].is_zero()) return p;
  }
}

std::vector<std::string> potential_text(const GaugePotential& p) {
  return {"A0=" + p.a0.str(), "A+=" + p.a[0].str(), "A3=" + p.a[1].str(), "A-=" + p.a[2].str()};
}

const GreenForm kGreenForms[] = {GreenForm::kGreen0,
                                 GreenForm::kGreen1,
                                 GreenForm::kRearrange1,
                                 GreenForm::kRearrange2,
                                 GreenForm::kGreenPotentialPrinted1,
                                 GreenForm::kGreenPotentialPrinted2,
                                 GreenForm::kGreenPotentialDerived};

CaseOutcome green(const SuiteConfig& cfg, int i, Rng& rng) {
  GreenForm f = kGreenForms[i % 7];
  CaseCorpus c(rng);
  Series psi = c.xpoly(cfg.order, 3, true), phi = c.xpoly(cfg.order, 3, true);
  std::vector<std::string> in{psi.str(), phi.str()};
  if (!green_form_uses_potential(f)) return {green_form_name(f), in, green_identity_residual(f, psi, phi)};
  GaugePotential pot = random_potential(c);
  for (auto& s : potential_text(pot)) in.push_back(s);
  return {green_form_name(f), in, green_identity_residual(f, psi, phi, &pot)};
}

ExpKind partner(ExpKind k) {
  switch (k) {
    case ExpKind::kXIp: return ExpKind::kIpX;
    case ExpKind::kIpX: return ExpKind::kXIp;
    case ExpKind::kBarXIp: return ExpKind::kBarIpX;
    case ExpKind::kBarIpX: return ExpKind::kBarXIp;
    case ExpKind::kStarIpX: return ExpKind::kStarXIp;
    case ExpKind::kStarXIp: return ExpKind::kStarIpX;
  }
  return k;
}

CaseOutcome exponential(const SuiteConfig& cfg, int i, Rng&) {
  ExpKind k = kKinds[i];
  QExponential e = build_exponential(k, cfg.order);
  std::vector<Series> r{set_zero(e.body, kChartX) - Series(1), set_zero(e.body, kChartP) - Series(1),
                        conjugate(e.body) - build_exponential(partner(k), cfg.order).body};
  for (int a = 0; a < 3; ++a) r.push_back(eigen_residual(e, a));
  return {exp_kind_name(k), {std::string(exp_kind_name(k)) + " N=" + std::to_string(cfg.order)}, r};
}

CaseOutcome translation(const SuiteConfig& cfg, int, Rng& rng) {
  CaseCorpus c(rng);
  Series f = c.xpoly(cfg.order, 4);
  Series f0(f.coefficient(0));
  std::vector<Series> r;
  for (Translation fl : {Translation::kOplus, Translation::kOplusBar}) {
    Series F = translate(f, fl);
    r.push_back(set_zero(F, kChartY) - f);
    r.push_back(set_zero(F, kChartX) - to_y(f));
    Inversion inv = fl == Translation::kOplus ? Inversion::kOminus : Inversion::kOminusBar;
    auto s = [inv](const Series& g) { return invert_coordinates(g, inv); };
    r.push_back(multiply_xy(apply_first(F, s)) - f0);
    r.push_back(multiply_xy(apply_second(F, s)) - f0);
    r.push_back(translate_operator_form(f, fl) - F);
  }
  r.push_back(translate_explicit_mirror(f) - translate(f, Translation::kOplusBar));
  return {"translation", {f.str()}, r};
}

std::string wave_text(Flavor f, int n, int k) {
  return std::string("plane_wave(") + flavor_name(f) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
}

CaseOutcome kg(const SuiteConfig& cfg, int i, Rng&) {
  const int n = cfg.order, k = cfg.korder;
  if (i < 4) {
    Flavor f = kFlavors[i];
    return {std::string("kg ") + equation_name(matched_equation(f)), {wave_text(f, n, k)},
            {kg_residual(plane_wave(f, n, k), matched_equation(f))}};
  }
  if (i == 4) {
    std::vector<Series> r;
    for (int kk = 1; kk <= std::max(4, k); ++kk) r.push_back(energy_momentum_residual(kk));
    return {"energy-momentum", {"K=1.." + std::to_string(std::max(4, k))}, r};
  }
  // iterated star products of p^2
  int pw = i - 4;
  Series it(1);
  for (int j = 0; j < pw; ++j) it = star(it, momentum_square());
  return {"momentum-power", {"k=" + std::to_string(pw)}, {normal_ordered_momentum_power(pw) - it}};
}

const Series kChis[] = {Series::var(kT), Series::var(kT, 2), Series::var(kT) + Series::var(kT, 2)};

CaseOutcome gauge(const SuiteConfig& cfg, int i, Rng& rng) {
  const Series& chi = kChis[i % 3];
  CaseCorpus c(rng);
  GaugePotential pot = random_potential(c);
  Series w = c.xpoly(3, 4, true);
  std::vector<Series> r;
  for (int idx : {kIdxTime, 0, 1, 2}) r.push_back(gauge_residual(idx, pot, w, chi, cfg.order));
  std::vector<std::string> in{"chi=" + chi.str(), "w=" + w.str()};
  for (auto& s : potential_text(pot)) in.push_back(s);
  return {"gauge", in, r};
}

std::vector<Series> conj_all(const std::vector<Series>& v, const Scalar& sign) {
  std::vector<Series> r;
  for (auto& s : v) r.push_back(conjugate(s).scaled(sign));
  return r;
}

std::vector<Series> minus(const std::vector<Series>& a, const std::vector<Series>& b) {
  std::vector<Series> r;
  for (std::size_t j = 0; j < a.size(); ++j) r.push_back(a[j] - b[j]);
  return r;
}

CaseOutcome continuity(Continuity kind, const SuiteConfig& cfg, int i, Rng& rng) {
  const int n = cfg.order, k = cfg.korder;
  std::string nm = continuity_name(kind);
  if (i == 0) {
    Series psi = plane_wave(Flavor::kPhiStarL, n, k).body, phi = plane_wave(Flavor::kPhiR, n, k).body;
    return {nm + " plane-wave", {wave_text(Flavor::kPhiStarL, n, k), wave_text(Flavor::kPhiR, n, k)},
            continuity_residual(kind, psi, phi)};
  }
  if (i == 1) {
    Series phl = plane_wave(Flavor::kPhiL, n, k).body, psr = plane_wave(Flavor::kPhiStarR, n, k).body;
    return {nm + " starred plane-wave", {wave_text(Flavor::kPhiL, n, k), wave_text(Flavor::kPhiStarR, n, k)},
            continuity_residual_star(kind, phl, psr)};
  }
  CaseCorpus c(rng);
  Series psi = c.xpoly(n + 1, 3, true), phi = c.xpoly(n + 1, 3, true);
  // exact modulo KG, and the conjugated suite
  auto r = continuity_residual(kind, psi, phi);
  Scalar sign = kind == Continuity::kCharge ? Scalar(-1) : Scalar(1);
  auto rs = continuity_residual_star(kind, conjugate(phi), conjugate(psi));
  return {nm + " identity", {psi.str(), phi.str()},
          concat(minus(r, continuity_kg_form(kind, psi, phi)), minus(rs, conj_all(r, sign)))};
}

CaseOutcome propagator(const SuiteConfig& cfg, int i, Rng&) {
  const int k = cfg.korder;
  std::string in = "K=" + std::to_string(k);
  if (i == 0) return {"momentum identity", {in}, {propagator_momentum_residual(k)}};
  if (i == 1) return {"retarded vs left", {in}, {propagator_series(k) + propagator_left(k)}};
  Scalar dinv = (Scalar::E(2) - Scalar::c(2) * Scalar::M(2)).inverse();
  Series cl, pw(1);
  for (int j = 0; j <= k; ++j) {
    cl += pw.scaled(Scalar::c(2 * j) * dinv.pow(j + 1));
    pw = pw * p_square_cl();
  }
  return {"classical series", {in}, {classical_limit(propagator_series(k)) - cl}};
}

CaseOutcome classical(const SuiteConfig& cfg, int i, Rng& rng) {
  CaseCorpus c(rng);
  const int n = cfg.order;
  std::vector<Series> r;
  std::vector<std::string> in;
  std::vector<Series> fs;
  for (int j = 0; j < cfg.cases; ++j) fs.push_back(c.xpoly(n, 4, true));
  for (auto& f : fs) in.push_back(f.str());
  switch (i) {
    case 0:
      for (std::size_t j = 0; j + 1 < fs.size() || j == 0; ++j) {
        const Series& f = fs[j];
        const Series& g = fs[(j + 1) % fs.size()];
        for (Ordering o : {Ordering::kStandard, Ordering::kReversed})
          r.push_back(classical_limit(star(f, g, o)) - classical_limit(f) * classical_limit(g));
      }
      return {"pointwise product", in, r};
    case 1:
      for (auto& f : fs) {
        Series f1 = classical_limit(f);
        for (int a = 0; a <= kIdxTime; ++a) {
          Series d = a == kIdxTime ? partial(f1, kT) : partial(f1, kXVars[a]);
          r.push_back(classical_limit(d_left_lower(a, f)) - d);
          r.push_back(classical_limit(d_left_bar_lower(a, f)) - d);
          r.push_back(classical_limit(d_right_lower(a, f)) + d);
          r.push_back(classical_limit(d_right_bar_lower(a, f)) + d);
        }
      }
      return {"ordinary derivatives", in, r};
    case 2:
      for (auto& f : fs) {
        Series f1 = classical_limit(f);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            Series delta = a == b ? f1 : Series();
            r.push_back(classical_limit(l_matrix_action(Calculus::kPlain, a, b, f)) - delta);
            r.push_back(classical_limit(l_matrix_action(Calculus::kHatted, a, b, f)) - delta);
            r.push_back(classical_limit(right_l_action(a, b, f)) - delta);
          }
      }
      return {"trivial L-matrices", in, r};
    case 3:
      for (ExpKind k : kKinds)
        r.push_back(classical_limit(build_exponential(k, n).body) -
                    exp_cl(pairing_cl().scaled(Scalar::i() * Scalar(classical_sign(k))), n));
      return {"exponentials", {"N=" + std::to_string(n)}, r};
    case 4:
      for (auto& f : fs) {
        Series g = f;
        for (auto& [k, cf] : f.terms())
          if (key_exp(k, kT)) g = g - Series::monomial(k, cf);  // spatial part only
        for (Translation fl : {Translation::kOplus, Translation::kOplusBar})
          r.push_back(classical_limit(translate(g, fl)) - shifted_cl(classical_limit(g)));
      }
      return {"translations", in, r};
    case 5: {
      // exact classical plane wave, on-shell factor kept symbolic
      Series phi = exp_cl(pairing_cl().scaled(Scalar::i()), n) *
                   exp_cl(Series::var(kT).scaled(-Scalar::i() * Scalar::E()), n);
      Box b;
      b.b[kGX] = n + 1;
      b.b[kGT] = n + 1;
      phi.set_box(b);
      Series shell = p_square_cl() + Series(Scalar::M(2) - Scalar::c(-2) * Scalar::E(2));
      for (KGEquation eq : {KGEquation::kRight, KGEquation::kLeft, KGEquation::kStarRight, KGEquation::kStarLeft})
        r.push_back(classical_limit(kg_operator(eq, phi)) - shell * phi);
      return {"classical plane wave", {"N=" + std::to_string(n)}, r};
    }
    case 6: {
      Scalar dinv = (Scalar::E(2) - Scalar::c(2) * Scalar::M(2)).inverse();
      Series cl, pw(1);
      for (int j = 0; j <= 2; ++j) {
        cl += pw.scaled(Scalar::c(2 * j) * dinv.pow(j + 1));
        pw = pw * p_square_cl();
      }
      return {"propagator", {"K=2"}, {classical_limit(propagator_series(2)) - cl}};
    }
    default: {
      const Scalar half = Scalar::frac(1, 2);
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const Series& psi = fs[j];
        const Series& phi = fs[(j + 1) % fs.size()];
        Series p1 = classical_limit(psi), f1 = classical_limit(phi);
        Series dp = partial(p1, kT), df = partial(f1, kT);
        r.push_back(classical_limit(charge_density_raw(psi, phi)) - (p1 * df - dp * f1));
        Series h = (dp * df).scaled(half * Scalar::c(-2)) + (p1 * f1).scaled(half * Scalar::M(2));
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            Scalar g = metric_upper(a, b).eval_q1();
            if (!g.is_zero()) h += (partial(p1, kXVars[b]) * partial(f1, kXVars[a])).scaled(half * g);
          }
        r.push_back(classical_limit(energy_density(psi, phi)) - h);
      }
      return {"densities", in, r};
    }
  }
}

CaseOutcome pairing(const SuiteConfig& cfg, int i, Rng&) {
  auto [side, calc, native] = kAuditRows[i];
  std::vector<std::string> in;
  std::vector<Series> best;
  bool found = false;
  for (Ordering o : {Ordering::kStandard, Ordering::kReversed}) {
    std::string detail;
    std::vector<Series> r;
    bool ok = true;
    try {
      r = detail::leibniz_pairing(detail::audit_action(side, calc, native), side, o, cfg.order, cfg.seed, cfg.cases, detail);
      for (auto& s : r)
        if (!s.is_zero()) ok = false;
    } catch (const std::logic_error& e) {
      ok = false;
      detail = e.what();
    }
    in.push_back(std::string(o == Ordering::kStandard ? "standard" : "reversed") + "=" +
                 (ok ? "consistent" : "inconsistent"));
    if (ok && !found) {
      found = true;
      best = r;
    } else if (!found && best.empty()) {
      best = r.empty() ? std::vector<Series>{Series(1)} : r;
    }
  }
  return {variant_name(side, calc, native), in, best};
}

int fixed(const SuiteConfig&, int n) { return n; }

}  // namespace

const std::vector<SuiteSpec>& suite_registry() {
  auto cont = [](Continuity k) {
    return [k](const SuiteConfig& c, int i, Rng& r) { return continuity(k, c, i, r); };
  };
  auto plus = [](int base) { return [base](const SuiteConfig& c) { return base + c.cases; }; };
  auto n_of = [](int n) { return [n](const SuiteConfig& c) { return fixed(c, n); }; };
  static const std::vector<SuiteSpec> reg{
      {"star-algebra", 1, 6, 0, 1, 60, plus(9), star_algebra},
      {"conjugation", 1, 4, 0, 1, 200, plus(0), conjugation},
      {"leibniz", 1, 4, 0, 1, 12, plus(0), leibniz},
      {"green", 1, 4, 0, 1, 2, [](const SuiteConfig& c) { return 7 * c.cases; }, green},
      {"exponential", 1, 4, 0, 1, 1, n_of(6), exponential},
      {"translation", 1, 3, 0, 1, 10, plus(0), translation},
      {"kg", 1, 3, 0, 3, 1, n_of(9), kg},
      {"gauge", 1, 3, 0, 1, 2, [](const SuiteConfig& c) { return 3 * c.cases; }, gauge},
      {"continuity-charge", 1, 2, 0, 2, 2, plus(2), cont(Continuity::kCharge)},
      {"continuity-energy", 1, 2, 0, 2, 2, plus(2), cont(Continuity::kEnergy)},
      {"continuity-momentum", 1, 2, 0, 2, 2, plus(2), cont(Continuity::kMomentum)},
      {"propagator", 1, 1, 1, 2, 1, n_of(3), propagator},
      {"classical-limit", 1, 3, 0, 1, 3, n_of(8), classical},
      {"pairing-audit", 3, 3, 0, 1, 3, n_of(5), pairing},
  };
  return reg;
}

}  // namespace qkg
