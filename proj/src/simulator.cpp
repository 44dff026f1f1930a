#include "hotelbell/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "hotelbell/error.hpp"

namespace hotelbell {

namespace {

constexpr int kMaxRedraws = 1000;

struct Chunk {
  std::uint64_t first_trial = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct ChunkResult {
  std::array<PairCounts, 4> pairs{};
  std::string log;
};

void validate(const ExperimentConfig& config) {
  if (config.n_trials == 0) throw Error(ErrorKind::ConfigInvalid, "n_trials must be positive");
  if (config.n_workers == 0) throw Error(ErrorKind::ConfigInvalid, "n_workers must be positive");
  double total = 0.0;
  for (double p : config.setting_probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::ConfigInvalid, "setting probability " + format_real(p) + " is invalid");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::ConfigInvalid,
                "setting probabilities sum to " + format_real(total) + ", not 1");
  }
}

void append_event(std::string& log, std::uint64_t trial, const SettingPair& pair, double x, double y,
                  int a, int b) {
  char line[160];
  const int len = std::snprintf(line, sizeof line, "%llu,%d,%d,%.17g,%.17g,%d,%d\n",
                                static_cast<unsigned long long>(trial), pair.alpha, pair.beta, x, y,
                                a, b);
  log.append(line, static_cast<std::size_t>(len));
}

ChunkResult run_chunk(const ExperimentConfig& config, const Chunk& chunk) {
  const std::array<PartialRV, 2> alice{alice_observable(0), alice_observable(1)};
  const std::array<PartialRV, 2> bob{bob_observable(0), bob_observable(1)};
  std::array<double, 4> cumulative{};
  double running = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    running += config.setting_probabilities[k];
    cumulative[k] = running;
  }

  Rng rng(chunk.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ChunkResult result;
  for (std::uint64_t t = 0; t < chunk.count; ++t) {
    const double u = unit(rng) * running;
    std::size_t k = 0;
    while (k < 3 && !(u < cumulative[k])) ++k;
    const SettingPair& pair = kSettingPairs[k];
    const GridDensity& rho = config.family.density(k);

    // a room on a band edge leaves the answer undefined; draw again
    double x = 0.0, y = 0.0;
    std::optional<double> a, b;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        throw Error(ErrorKind::ConfigInvalid, "density rho" + pair_label(k) +
                                                  " keeps producing rooms without an answer");
      }
      std::tie(x, y) = rho.sample(rng);
      a = alice[pair.alpha].find(x);
      b = bob[pair.beta].find(y);
      if (a && b) break;
    }
    const auto ai = static_cast<int>(*a);
    const auto bi = static_cast<int>(*b);
    PairCounts& counts = result.pairs[k];
    ++counts.trials;
    counts.sum_ab += ai * bi;
    counts.sum_a += ai;
    counts.sum_b += bi;
    if (config.event_log != nullptr) {
      append_event(result.log, chunk.first_trial + t, pair, x, y, ai, bi);
    }
  }
  return result;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::uint64_t workers = config.n_workers;
  std::vector<Chunk> chunks(workers);
  std::uint64_t next = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t count = config.n_trials / workers + (w < config.n_trials % workers ? 1 : 0);
    chunks[w] = Chunk{next, count, config.master_seed ^ w};
    next += count;
  }

  std::vector<ChunkResult> results(workers);
  if (workers == 1) {
    results[0] = run_chunk(config, chunks[0]);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          results[w] = run_chunk(config, chunks[w]);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  ExperimentSummary summary;
  summary.n_trials = config.n_trials;
  if (config.event_log != nullptr) *config.event_log << "trial,alpha,beta,x,y,a,b\n";
  for (const ChunkResult& r : results) {
    for (std::size_t k = 0; k < 4; ++k) {
      summary.pairs[k].trials += r.pairs[k].trials;
      summary.pairs[k].sum_ab += r.pairs[k].sum_ab;
      summary.pairs[k].sum_a += r.pairs[k].sum_a;
      summary.pairs[k].sum_b += r.pairs[k].sum_b;
    }
    if (config.event_log != nullptr) *config.event_log << r.log;
  }
  return summary;
}

ExperimentReport estimate(const ExperimentSummary& summary) {
  ExperimentReport report;
  std::array<double, 4> correlators{};
  double variance = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const PairCounts& c = summary.pairs[k];
    if (c.trials < 2) {
      throw Error(ErrorKind::InsufficientTrials, "pair " + pair_label(k) + " has " +
                                                     std::to_string(c.trials) +
                                                     " trials, need at least 2");
    }
    const auto n = static_cast<double>(c.trials);
    auto mean_and_se = [n](std::int64_t sum) {
      const double m = static_cast<double>(sum) / n;
      return std::pair{m, std::sqrt(std::max(0.0, 1.0 - m * m) / n)};
    };
    PairEstimate& e = report.pairs[k];
    std::tie(e.correlator, e.correlator_se) = mean_and_se(c.sum_ab);
    std::tie(e.mean_a, e.mean_a_se) = mean_and_se(c.sum_a);
    std::tie(e.mean_b, e.mean_b_se) = mean_and_se(c.sum_b);
    correlators[k] = e.correlator;
    variance += e.correlator_se * e.correlator_se;
  }
  report.s = chsh_value(correlators);
  report.s_se = std::sqrt(variance);
  return report;
}

int alice_outcome(int alpha, double x) { return static_cast<int>(alice_observable(alpha).eval(x)); }
int bob_outcome(int beta, double y) { return static_cast<int>(bob_observable(beta).eval(y)); }

}  // namespace hotelbell
