// Command-line front end: evaluate observables, check derivation steps for
// empty domains, build and evaluate density families, simulate the two-hotel
// experiment and emit figure data.
//
// Exit codes: 0 success, 1 invalid usage, 2 runtime error, 3 empty domain.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hotelbell/hotelbell.hpp"

namespace hb = hotelbell;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitEmpty = 3;

std::string signed_value(double v) { return (v > 0 ? "+" : "") + hb::format_real(v); }

int run_eval(double alpha, double x) {
  try {
    std::cout << signed_value(hb::make_observable(alpha).eval(x)) << '\n';
    return 0;
  } catch (const hb::Error& e) {
    std::cout << hb::to_string(e.kind()) << '\n';
    std::cerr << e.what() << '\n';
    return kExitRuntime;
  }
}

int run_domain(const std::string& text) {
  const hb::DomainReport report = hb::analyze(hb::parse(text));
  std::cout << hb::format_report(report) << '\n';
  return report.verdict == hb::Verdict::Exists ? 0 : kExitEmpty;
}

int run_expect(const std::string& path) {
  const hb::ChshFamily family = hb::family_from_json(hb::read_json_file(path));
  const auto e = hb::family_expectations(family);
  const auto m = hb::family_marginals(family);
  std::printf("%-6s %-24s %-24s %-24s\n", "pair", "<ab>", "<a>", "<b>");
  for (std::size_t k = 0; k < 4; ++k) {
    std::printf("%-6s %-24s %-24s %-24s\n", hb::pair_label(k).c_str(), hb::format_real(e[k]).c_str(),
                hb::format_real(m[k].first).c_str(), hb::format_real(m[k].second).c_str());
  }
  std::printf("S = %s\n", hb::format_real(hb::chsh_value(e)).c_str());
  return 0;
}

int run_saturate(const std::string& out, std::size_t grid, const std::vector<double>& targets) {
  if (grid == 0) {
    hb::write_json_file(out, hb::family_to_json(hb::saturating_family()));
  } else {
    const std::array<double, 4> t{targets[0], targets[1], targets[2], targets[3]};
    const hb::OptimizeResult result = hb::optimize_family(t, grid, grid);
    hb::write_json_file(out, hb::family_to_json(result.family));
    for (std::size_t k = 0; k < 4; ++k) {
      std::printf("pair %s: target %s achieved %.17g after %zu iterations\n",
                  hb::pair_label(k).c_str(), hb::format_real(t[k]).c_str(), result.achieved[k],
                  result.iterations[k]);
    }
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int run_simulate(const std::string& family_path, std::uint64_t trials, std::uint64_t seed,
                 unsigned workers, const std::string& log_path) {
  hb::ExperimentConfig config{.family = hb::family_from_json(hb::read_json_file(family_path)),
                              .n_trials = trials,
                              .master_seed = seed,
                              .n_workers = workers};
  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path);
    if (!log) throw hb::Error(hb::ErrorKind::Io, "cannot write " + log_path);
    config.event_log = &log;
  }
  const hb::ExperimentSummary summary = hb::run_experiment(config);
  const hb::ExperimentReport report = hb::estimate(summary);
  std::printf("%-6s %10s %12s %12s %12s %12s\n", "pair", "trials", "<ab>", "se", "<a>", "<b>");
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& p = report.pairs[k];
    total += summary.pairs[k].trials;
    std::printf("%-6s %10llu %12.6f %12.6f %12.6f %12.6f\n", hb::pair_label(k).c_str(),
                static_cast<unsigned long long>(summary.pairs[k].trials), p.correlator,
                p.correlator_se, p.mean_a, p.mean_b);
  }
  std::printf("outcome pairs = %llu of %llu trials\n", static_cast<unsigned long long>(total),
              static_cast<unsigned long long>(summary.n_trials));
  std::printf("S = %.6f ± %.6f\n", report.s, report.s_se);
  return 0;
}

int run_check_classical(std::size_t trials, std::size_t points, std::uint64_t seed) {
  const hb::ClassicalSuiteResult r = hb::run_classical_suite(trials, points, seed);
  std::printf("instances %zu, max |S| = %.17g, violations of |S| <= 2: %zu\n", r.instances,
              r.max_abs_s, r.violations);
  std::printf("points %zu, max |a0b0 + a1b0 + a0b1 - a1b1| = %s, violations: %zu\n", r.points,
              hb::format_real(r.max_abs_pointwise).c_str(), r.pointwise_violations);
  const bool ok = r.violations == 0 && r.pointwise_violations == 0;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial random variables with disjoint domains and the CHSH combination"};
  app.require_subcommand(1);

  double alpha = 0.0, x = 0.0;
  auto* eval = app.add_subcommand("eval", "Evaluate a_alpha(x)");
  eval->add_option("--alpha", alpha, "Hotel index")->required();
  eval->add_option("--x", x, "Room number")->required();

  std::string expr;
  auto* domain = app.add_subcommand("domain", "Report where a derivation expression exists");
  domain->add_option("--expr", expr, "Expression such as \"(a0+a1)*b0\"")->required();

  std::string family_path;
  auto* expect = app.add_subcommand("expect", "Exact correlators, marginals and S of a family");
  expect->add_option("--family", family_path, "Family JSON")->required()->check(CLI::ExistingFile);

  std::string out_path;
  std::size_t grid = 0;
  std::vector<double> targets{1.0, 1.0, 1.0, -1.0};
  auto* saturate = app.add_subcommand("saturate", "Write the saturating or an optimized family");
  saturate->add_option("--out", out_path, "Output JSON")->required();
  saturate->add_option("--grid", grid, "Optimize on an N×N grid (N multiple of 4) instead");
  saturate->add_option("--targets", targets, "Target correlators e00 e10 e01 e11 (with --grid)")
      ->expected(4);

  std::uint64_t trials = 0, seed = 0;
  unsigned workers = 1;
  std::string log_path;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the two-hotel experiment");
  simulate->add_option("--family", family_path, "Family JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--trials", trials, "Number of trials")->required();
  simulate->add_option("--seed", seed, "Master seed")->required();
  simulate->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--log", log_path, "Event log CSV");

  std::size_t classical_trials = 1000, points = 100000;
  std::uint64_t classical_seed = 1;
  auto* classical = app.add_subcommand("check-classical", "Randomized common-domain |S| <= 2 check");
  classical->add_option("--trials", classical_trials, "Random instances")->required();
  classical->add_option("--points", points, "Pointwise oracle samples");
  classical->add_option("--seed", classical_seed, "Seed");

  std::string figures_dir;
  auto* figures = app.add_subcommand("figures", "Write fig1.csv, fig2.csv, fig3.csv");
  figures->add_option("--out", figures_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return run_eval(alpha, x);
    if (*domain) return run_domain(expr);
    if (*expect) return run_expect(family_path);
    if (*saturate) return run_saturate(out_path, grid, targets);
    if (*simulate) return run_simulate(family_path, trials, seed, workers, log_path);
    if (*classical) return run_check_classical(classical_trials, points, classical_seed);
    if (*figures) {
      hb::write_figures(figures_dir);
      std::printf("wrote fig1.csv fig2.csv fig3.csv to %s\n", figures_dir.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
