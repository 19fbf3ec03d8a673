#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qkg/harness.hpp"

using namespace qkg;

namespace {

SuiteConfig cfg_of(const std::string& suite, std::uint64_t seed = 1, int cases = 0) {
  SuiteConfig c;
  c.suite = suite;
  c.seed = seed;
  c.cases = cases;
  return c;
}

}  // namespace

TEST_CASE("registry") {
  auto names = suite_names();
  CHECK(names.size() == 14);
  std::set<std::string> uniq(names.begin(), names.end());
  CHECK(uniq.size() == names.size());
  for (const char* n : {"star-algebra", "conjugation", "leibniz", "green", "exponential", "translation", "kg", "gauge",
                        "continuity-charge", "continuity-energy", "continuity-momentum", "propagator",
                        "classical-limit", "pairing-audit"})
    CHECK(uniq.count(n) == 1);
  CHECK_THROWS_AS(run_suite(cfg_of("unknown")), ConfigError);
  SuiteConfig low = cfg_of("pairing-audit");
  low.order = 2;
  CHECK_THROWS_AS(run_suite(low), ConfigError);
  SuiteConfig k0 = cfg_of("propagator");
  k0.korder = -1;
  CHECK_THROWS_AS(resolve_config(k0), ConfigError);
}

TEST_CASE("defaults are filled in") {
  SuiteConfig c = resolve_config(cfg_of("conjugation"));
  CHECK(c.order == 4);
  CHECK(c.cases == 200);
  CHECK(resolve_config(cfg_of("star-algebra")).order == 6);
}

TEST_CASE("per-case seeds") {
  CHECK(case_seed(0, 5) == 5);
  CHECK(case_seed(2, 3) == 2000009);
}

TEST_CASE("star-algebra suite passes and exit code") {
  SuiteReport r = run_suite(cfg_of("star-algebra", 3, 20));
  CHECK(r.cases.size() == 29);
  CHECK(r.violations == 0);
  CHECK(exit_code(r) == 0);
  for (std::size_t i = 0; i < r.cases.size(); ++i) CHECK(r.cases[i].index == int(i));
  SuiteReport bad = r;
  bad.violations = 1;
  CHECK(exit_code(bad) == 1);
}

TEST_CASE("report round trip") {
  SuiteReport r = run_suite(cfg_of("green", 4, 1));
  std::string text = emit_report(r);
  CHECK(text.rfind("#qkg-report 1\n", 0) == 0);
  SuiteReport back = parse_report(text);
  CHECK(back == r);
  CHECK(emit_report(back) == text);
  CHECK(diff_reports(r, back).empty());
  CHECK_THROWS_AS(parse_report("not a report"), ConfigError);
  CHECK_THROWS_AS(parse_report("#qkg-report 1\n{\"type\":\"config\"}\n"), ConfigError);
}

TEST_CASE("timing is opt-in and round-trips") {
  SuiteConfig c = cfg_of("propagator");
  std::string plain = emit_report(run_suite(c));
  CHECK(plain.find("millis") == std::string::npos);
  c.timing = true;
  SuiteReport t = run_suite(c);
  std::string timed = emit_report(t);
  CHECK(timed.find("millis") != std::string::npos);
  CHECK(parse_report(timed) == t);
}

TEST_CASE("diff reports") {
  SuiteReport a = run_suite(cfg_of("conjugation", 1, 6));
  SuiteReport b = a;
  b.cases[2].verdict = Verdict::kViolation;
  b.violations = 1;
  auto d = diff_reports(a, b);
  REQUIRE(d.size() == 2);
  CHECK(d[0].find("case 2") == 0);
  SuiteReport c = run_suite(cfg_of("conjugation", 2, 6));
  CHECK_FALSE(diff_reports(a, c).empty());
}

TEST_CASE("determinism: parallel and serial runners agree byte for byte") {
  for (const char* s : {"conjugation", "gauge", "continuity-charge", "pairing-audit"}) {
    SuiteConfig c = cfg_of(s, 11);
    if (std::string(s) == "conjugation") c.cases = 40;
    std::string p1 = emit_report(run_suite(c)), p2 = emit_report(run_suite(c));
    std::string se = emit_report(run_suite(c, Execution::kSerial));
    CHECK(p1 == p2);
    CHECK(p1 == se);
  }
}

TEST_CASE("reduction flag only changes term counts") {
  SuiteConfig c = cfg_of("exponential");
  SuiteReport a = run_suite(c);
  c.reduce = true;
  SuiteReport b = run_suite(c);
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(a.cases[i].verdict == b.cases[i].verdict);
    CHECK(b.cases[i].residual_terms <= a.cases[i].residual_terms);
  }
}

TEST_CASE("corpus coefficients come from the fixed set") {
  std::mt19937_64 rng(3);
  CaseCorpus c(rng);
  std::set<std::string> seen;
  for (int j = 0; j < 200; ++j) seen.insert(c.coef().str());
  CHECK(seen.size() == 10);
  Series f = c.xpoly(3, 5, true);
  for (auto& [k, cf] : f.terms()) CHECK(key_degree(k, kGX) <= 3);
}

TEST_CASE("pairing audit") {
  PairingAudit a = pairing_audit(3, 1);
  CHECK(a.every_variant_consistent());
  REQUIRE(a.cells.size() == 10);
  CHECK(a.cells[0].side == Side::kLeft);
  CHECK(a.cells[0].calculus == Calculus::kPlain);
  CHECK(a.cells[0].ordering == Ordering::kStandard);
  CHECK(a.cells[0].consistent);
  // the reversed-order representation of the hatted action pairs with the reversed product
  CHECK_FALSE(a.cells[8].consistent);
  CHECK(a.cells[9].consistent);
  for (std::uint64_t seed : {2u, 17u}) {
    PairingAudit b = pairing_audit(3, seed);
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i].consistent == b.cells[i].consistent);
  }
  CHECK_THROWS_AS(pairing_audit(2, 1), ConfigError);
}
