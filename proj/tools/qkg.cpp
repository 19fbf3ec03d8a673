// qkg: run identity suites, multiply series, expand exponentials, diff reports.
// Exit codes: 0 pass, 1 violations or differences, 2 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qkg/harness.hpp"

using namespace qkg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExpKind parse_kind(const std::string& s) {
  static const std::pair<const char*, ExpKind> names[] = {
      {"x-ip", ExpKind::kXIp},          {"ip-x", ExpKind::kIpX},          {"bar-x-ip", ExpKind::kBarXIp},
      {"bar-ip-x", ExpKind::kBarIpX},   {"star-ip-x", ExpKind::kStarIpX}, {"star-x-ip", ExpKind::kStarXIp}};
  for (auto& [n, k] : names)
    if (s == n || s == exp_kind_name(k)) return k;
  throw ConfigError("unknown exponential kind: " + s);
}

void print_text(const SuiteReport& r) {
  for (auto& c : r.cases) {
    std::cout << "[" << verdict_name(c.verdict) << "] " << c.index << " " << c.name;
    if (c.residual_terms) std::cout << " (" << c.residual_terms << " residual terms)";
    std::cout << "\n";
    for (auto& o : c.offending) std::cout << "    " << o << "\n";
  }
  std::cout << r.config.suite << ": " << r.exact << " exact, " << r.boundary << " boundary-only, " << r.violations
            << " violations\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed Klein-Gordon identity checker"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  bool json = false, serial = false;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("--suite", cfg.suite, "suite name")->required();
  verify->add_option("--order", cfg.order, "truncation order N (0: suite default)");
  verify->add_option("--korder", cfg.korder, "momentum order K (0: suite default)");
  verify->add_option("--seed", cfg.seed, "corpus seed");
  verify->add_option("--cases", cfg.cases, "corpus size (0: suite default)");
  verify->add_flag("--json", json, "emit the line-delimited report");
  verify->add_flag("--reduce", cfg.reduce, "count residual terms outside the error region only");
  verify->add_flag("--timing", cfg.timing, "record per-case wall time");
  verify->add_flag("--serial", serial, "use the serial reference runner");
  verify->add_option("--out", out_path, "also write the report to a file");

  std::string f_text, g_text, ordering = "standard";
  auto* starcmd = app.add_subcommand("star", "star product of two series");
  starcmd->add_option("f", f_text)->required();
  starcmd->add_option("g", g_text)->required();
  starcmd->add_option("--ordering", ordering)->check(CLI::IsMember({"standard", "reversed"}));

  std::string kind;
  int exp_order = 2;
  auto* expand = app.add_subcommand("expand", "print a truncated q-exponential");
  expand->add_option("--exp", kind, "x-ip, ip-x, bar-x-ip, bar-ip-x, star-ip-x, star-x-ip")->required();
  expand->add_option("--order", exp_order);

  std::vector<std::string> diff;
  auto* report = app.add_subcommand("report", "compare two reports");
  report->add_option("--diff", diff, "two report files")->expected(2)->required();

  int audit_order = 3, audit_cases = 3;
  std::uint64_t audit_seed = 1;
  auto* audit = app.add_subcommand("audit", "calculus-pairing audit");
  audit->add_option("--order", audit_order);
  audit->add_option("--seed", audit_seed);
  audit->add_option("--cases", audit_cases);

  app.add_subcommand("list", "list suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      SuiteReport r = run_suite(cfg, serial ? Execution::kSerial : Execution::kParallel);
      std::string text = emit_report(r);
      if (json)
        std::cout << text;
      else
        print_text(r);
      if (!out_path.empty()) std::ofstream(out_path) << text;
      return exit_code(r);
    }
    if (*starcmd) {
      Ordering o = ordering == "reversed" ? Ordering::kReversed : Ordering::kStandard;
      std::cout << star(parse_series(f_text), parse_series(g_text), o).str() << "\n";
      return 0;
    }
    if (*expand) {
      std::cout << build_exponential(parse_kind(kind), exp_order).body.str() << "\n";
      return 0;
    }
    if (*report) {
      auto d = diff_reports(parse_report(slurp(diff[0])), parse_report(slurp(diff[1])));
      for (auto& line : d) std::cout << line << "\n";
      if (d.empty()) std::cout << "identical\n";
      return d.empty() ? 0 : 1;
    }
    if (*audit) {
      PairingAudit a = pairing_audit(audit_order, audit_seed, audit_cases);
      for (auto& c : a.cells)
        std::cout << variant_name(c.side, c.calculus, c.native) << " "
                  << (c.ordering == Ordering::kStandard ? "standard" : "reversed") << ": "
                  << (c.consistent ? "consistent" : "inconsistent") << "\n";
      return a.every_variant_consistent() ? 0 : 1;
    }
    for (auto& n : suite_names()) std::cout << n << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "qkg: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qkg: " << e.what() << "\n";
    return 2;
  }
}
