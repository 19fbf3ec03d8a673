#include <chrono>

#include <omp.h>

#include "qkg/harness.hpp"

namespace qkg {

namespace {

const Scalar& coef_pool(std::size_t i) {
  static const std::vector<Scalar> pool = [] {
    std::vector<Scalar> p;
    for (int re : {-2, -1, 1, 2}) p.emplace_back(re);
    p.push_back(Scalar::frac(1, 2));
    p.push_back(Scalar::frac(-3, 2));
    p.push_back(Scalar::i());
    p.push_back(-Scalar::i());
    p.push_back(Scalar(1) + Scalar::i());
    p.push_back(Scalar(1) - Scalar::i() * Scalar::frac(1, 2));
    return p;
  }();
  return pool[i % pool.size()];
}

CaseResult classify_outcome(const SuiteConfig& cfg, int index, CaseOutcome&& out) {
  CaseResult r;
  r.index = index;
  r.name = std::move(out.name);
  r.inputs = std::move(out.inputs);
  for (const Series& s : out.residuals) {
    Classification c = classify(s);
    r.residual_terms += cfg.reduce ? s.pruned().size() : s.size();
    if (int(c.verdict) > int(r.verdict)) r.verdict = c.verdict;
    for (auto& o : c.offending)
      if (r.offending.size() < 8) r.offending.push_back(o);
  }
  return r;
}

CaseResult run_case(const SuiteSpec& spec, const SuiteConfig& cfg, int i) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(case_seed(cfg.seed, i));
  CaseResult r;
  try {
    r = classify_outcome(cfg, i, spec.run(cfg, i, rng));
  } catch (const std::exception& e) {
    // a throwing identity is a violation, not a crash of the suite
    r.index = i;
    r.name = spec.name + "#" + std::to_string(i);
    r.verdict = Verdict::kViolation;
    r.offending.push_back(std::string("exception: ") + e.what());
  }
  if (cfg.timing)
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int CaseCorpus::pick(int lo, int hi) { return lo + int(rng_() % std::uint64_t(hi - lo + 1)); }

Scalar CaseCorpus::coef() { return coef_pool(std::size_t(rng_() % 10)); }

Series CaseCorpus::monomial(int deg, const std::vector<int>& vars) {
  std::array<int, kNumVars> e{};
  for (int s = 0; s < deg; ++s) e[std::size_t(vars[std::size_t(pick(0, int(vars.size()) - 1))])]++;
  return Series::monomial(key_make(e));
}

Series CaseCorpus::poly(int maxdeg, const std::vector<int>& vars, int nterms, bool with_t) {
  Series f;
  for (int j = 0; j < nterms; ++j) {
    Series m = monomial(pick(0, maxdeg), vars);
    if (with_t && pick(0, 1)) m = m * Series::var(kT, pick(1, 2));
    f += m.scaled(coef());
  }
  return f;
}

std::uint64_t case_seed(std::uint64_t seed, int index) { return seed * 1000003ULL + std::uint64_t(index); }

const SuiteSpec& find_suite(const std::string& name) {
  for (auto& s : suite_registry())
    if (s.name == name) return s;
  throw ConfigError("unknown suite: " + name);
}

std::vector<std::string> suite_names() {
  std::vector<std::string> n;
  for (auto& s : suite_registry()) n.push_back(s.name);
  return n;
}

SuiteConfig resolve_config(const SuiteConfig& in) {
  const SuiteSpec& s = find_suite(in.suite);
  SuiteConfig c = in;
  if (c.order == 0) c.order = s.default_order;
  if (c.korder == 0) c.korder = s.default_korder;
  if (c.cases == 0) c.cases = s.default_cases;
  if (c.order < s.min_order)
    throw ConfigError(s.name + ": order " + std::to_string(c.order) + " below minimum " + std::to_string(s.min_order));
  if (c.korder < s.min_korder)
    throw ConfigError(s.name + ": korder " + std::to_string(c.korder) + " below minimum " +
                      std::to_string(s.min_korder));
  if (c.cases < 1) throw ConfigError(s.name + ": corpus size must be positive");
  return c;
}

SuiteReport run_suite(const SuiteConfig& in, Execution exec) {
  SuiteReport rep;
  rep.config = resolve_config(in);
  const SuiteSpec& spec = find_suite(rep.config.suite);
  const SuiteConfig& cfg = rep.config;
  const int n = spec.count(cfg);
  rep.cases.resize(std::size_t(n));
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) rep.cases[std::size_t(i)] = run_case(spec, cfg, i);
  } else {
    for (int i = 0; i < n; ++i) rep.cases[std::size_t(i)] = run_case(spec, cfg, i);
  }
  for (auto& c : rep.cases) {
    switch (c.verdict) {
      case Verdict::kExactZero: ++rep.exact; break;
      case Verdict::kBoundaryOnly: ++rep.boundary; break;
      case Verdict::kViolation: ++rep.violations; break;
    }
  }
  return rep;
}

int exit_code(const SuiteReport& r) { return r.violations ? 1 : 0; }

}  // namespace qkg
