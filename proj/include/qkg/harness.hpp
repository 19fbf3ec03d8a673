#pragma once
// Verification harness: a registry of named identity suites, a per-case
// parallel runner with a serial reference path, line-delimited JSON reports
// and the calculus-pairing audit.

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkg/kleingordon.hpp"

namespace qkg {

// Bad suite name, order below the suite minimum, malformed report.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  std::string suite;
  int order = 0;   // 0 picks the suite default
  int korder = 0;  // momentum order; 0 picks the suite default
  std::uint64_t seed = 1;
  int cases = 0;   // corpus size; 0 picks the suite default
  bool reduce = false;  // count residual terms after dropping the error region
  bool timing = false;  // record wall time per case; breaks byte-identity
  bool operator==(const SuiteConfig&) const = default;
};

struct CaseResult {
  int index = 0;
  std::string name;
  std::vector<std::string> inputs;
  Verdict verdict = Verdict::kExactZero;
  std::size_t residual_terms = 0;
  std::vector<std::string> offending;
  double millis = 0;
  bool operator==(const CaseResult&) const = default;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CaseResult> cases;
  int exact = 0, boundary = 0, violations = 0;
  bool operator==(const SuiteReport&) const = default;
};

// What a case hands back to the runner: residuals to classify.
struct CaseOutcome {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<Series> residuals;
};

struct SuiteSpec {
  std::string name;
  int min_order, default_order;
  int min_korder, default_korder;
  int default_cases;
  std::function<int(const SuiteConfig&)> count;
  std::function<CaseOutcome(const SuiteConfig&, int index, std::mt19937_64& rng)> run;
};

const std::vector<SuiteSpec>& suite_registry();
std::vector<std::string> suite_names();
const SuiteSpec& find_suite(const std::string& name);  // throws ConfigError
// fills defaults and checks minimums
SuiteConfig resolve_config(const SuiteConfig& cfg);

enum class Execution { kParallel, kSerial };
SuiteReport run_suite(const SuiteConfig& cfg, Execution exec = Execution::kParallel);
std::uint64_t case_seed(std::uint64_t seed, int index);

// 0 all pass, 1 violations
int exit_code(const SuiteReport& r);

std::string emit_report(const SuiteReport& r);
SuiteReport parse_report(const std::string& text);  // throws ConfigError
// human readable differences, empty when equal (timing ignored)
std::vector<std::string> diff_reports(const SuiteReport& a, const SuiteReport& b);

// Random polynomials with coefficients from a fixed Gaussian-rational set.
class CaseCorpus {
 public:
  explicit CaseCorpus(std::mt19937_64& rng) : rng_(rng) {}
  int pick(int lo, int hi);
  Scalar coef();
  Series poly(int maxdeg, const std::vector<int>& vars, int nterms, bool with_t = false);
  Series xpoly(int maxdeg, int nterms = 4, bool with_t = false) { return poly(maxdeg, {kXP, kX3, kXM}, nterms, with_t); }
  Series monomial(int deg, const std::vector<int>& vars);

 private:
  std::mt19937_64& rng_;
};

// Leibniz decomposition per (side, calculus) and star ordering, with L
// extracted from degree-one probes.
struct PairingCell {
  Side side;
  Calculus calculus;
  bool native;  // hatted left action written in the reversed-order basis
  Ordering ordering;
  bool consistent;
  std::string detail;  // first failure
};
struct PairingAudit {
  int order;
  std::vector<PairingCell> cells;  // 5 rows x 2 orderings
  bool every_variant_consistent() const;  // the four variants; the native row is informational
};
struct AuditRow {
  Side side;
  Calculus calculus;
  bool native;
};
inline constexpr AuditRow kAuditRows[] = {{Side::kLeft, Calculus::kPlain, false},
                                          {Side::kLeft, Calculus::kHatted, false},
                                          {Side::kRight, Calculus::kPlain, false},
                                          {Side::kRight, Calculus::kHatted, false},
                                          {Side::kLeft, Calculus::kHatted, true}};
PairingAudit pairing_audit(int order, std::uint64_t seed, int cases = 4);
const char* variant_name(Side s, Calculus c, bool native = false);

}  // namespace qkg
