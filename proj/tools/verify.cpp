// verify: runs the verification suites and prints a report.
//
//   verify <coherent|resolution|suq2|dynamics|biortho|all> --n 2..4
//          [--rho 2,3] [--input problem.json] [--format text|json]
//          [--tol 1e-10] [--max-n 8] [--no-timings]
//
// Exit status: 0 all checks pass, 1 some check fails, 2 usage or I/O error.

#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "qgrass/problem.hpp"
#include "qgrass/suites.hpp"

namespace {

constexpr int kExitUsage = 2;

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  static const std::regex re(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return std::nullopt;
  try {
    const int lo = std::stoi(m[1].str());
    const int hi = m[2].matched ? std::stoi(m[2].str()) : lo;
    return std::make_pair(lo, hi);
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

int usage_error(const std::string& msg) {
  std::cerr << "verify: " << msg << "\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Grassmannian coherent-state identities"};
  std::string selector_text, range_text, rho_text, input_path, format = "text";
  double tol = 1e-10;
  int max_n = 8;
  bool no_timings = false;

  app.add_option("selector", selector_text, "coherent, resolution, suq2, dynamics, biortho or all")->required();
  app.add_option("--n", range_text, "level range a..b (or a single level)");
  app.add_option("--rho", rho_text, "comma-separated positive rationals rho_1,rho_2,...");
  app.add_option("--input", input_path, "problem file (JSON)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--tol", tol, "tolerance for numeric checks")->check(CLI::PositiveNumber);
  app.add_option("--max-n", max_n, "largest level accepted")->check(CLI::Range(2, 64));
  app.add_flag("--no-timings", no_timings, "report runtime_ms as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const auto selector = qgrass::parse_selector(selector_text);
  if (!selector) return usage_error("unknown selector '" + selector_text + "'");

  qgrass::SuiteOptions opt;
  opt.tol = tol;
  opt.timings = !no_timings;

  std::optional<qgrass::Problem> problem;
  if (!input_path.empty()) {
    try {
      problem = qgrass::load_problem(input_path);
    } catch (const qgrass::Error& e) {
      return usage_error(e.what());
    }
    opt.n_lo = opt.n_hi = problem->n;
    opt.rho = problem->rho;
    opt.H = problem->H;
  }

  if (!range_text.empty()) {
    const auto range = parse_range(range_text);
    if (!range) return usage_error("--n expects a..b, got '" + range_text + "'");
    opt.n_lo = range->first;
    opt.n_hi = range->second;
  } else if (!problem) {
    return usage_error("--n is required unless --input gives n");
  }
  if (opt.n_lo < 2) return usage_error("levels start at 2");
  if (opt.n_hi < opt.n_lo) return usage_error("empty level range " + range_text);
  if (opt.n_hi > max_n)
    return usage_error("level " + std::to_string(opt.n_hi) + " exceeds --max-n " + std::to_string(max_n));

  if (!rho_text.empty()) {
    try {
      opt.rho = qgrass::parse_rational_list(rho_text, "--rho");
      qgrass::check_rho(opt.rho, "--rho");
    } catch (const qgrass::Error& e) {
      return usage_error(e.what());
    }
  }
  const bool numeric = *selector == qgrass::Selector::Biortho || *selector == qgrass::Selector::All;
  if (numeric && !opt.rho.empty()) {
    const int need = (opt.H ? static_cast<int>(opt.H->rows()) : opt.n_hi) - 1;
    if (static_cast<int>(opt.rho.size()) < need)
      return usage_error("need " + std::to_string(need) + " rho values, got " + std::to_string(opt.rho.size()));
  }

  const qgrass::SuiteReport report = qgrass::run_suite(*selector, opt);
  std::cout << qgrass::emit_report(report, format == "json" ? qgrass::ReportFormat::Json
                                                           : qgrass::ReportFormat::Text);
  return report.any_fail() ? 1 : 0;
}
