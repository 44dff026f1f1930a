#pragma once

#include <array>
#include <cstdint>
#include <ostream>

#include "hotelbell/chsh.hpp"

namespace hotelbell {

struct ExperimentConfig {
  ChshFamily family = saturating_family();
  std::uint64_t n_trials = 0;
  /// Probability of each setting pair, order 00, 10, 01, 11.
  std::array<double, 4> setting_probabilities{0.25, 0.25, 0.25, 0.25};
  std::uint64_t master_seed = 0;
  unsigned n_workers = 1;
  /// Optional CSV event log `trial,alpha,beta,x,y,a,b`, written in trial order.
  std::ostream* event_log = nullptr;
};

struct PairCounts {
  std::uint64_t trials = 0;
  std::int64_t sum_ab = 0;
  std::int64_t sum_a = 0;
  std::int64_t sum_b = 0;

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// Raw per-pair accumulators. Every trial lands in exactly one pair and
/// contributes one ±1 outcome for each party.
struct ExperimentSummary {
  std::uint64_t n_trials = 0;
  std::array<PairCounts, 4> pairs{};

  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

struct PairEstimate {
  double correlator = 0.0;
  double correlator_se = 0.0;
  double mean_a = 0.0;
  double mean_a_se = 0.0;
  double mean_b = 0.0;
  double mean_b_se = 0.0;
};

struct ExperimentReport {
  std::array<PairEstimate, 4> pairs{};
  double s = 0.0;
  double s_se = 0.0;
};

/// Trials are split into n_workers contiguous chunks (the first
/// n_trials % n_workers chunks get one extra trial); chunk w draws from
/// mt19937_64 seeded with master_seed ^ w. Results are merged in chunk
/// order, so the summary depends only on (config, n_workers).
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// ê = sum_ab / trials, se = sqrt((1 - ê²) / trials); S via chsh_value with
/// root-sum-square error. InsufficientTrials if a pair has fewer than 2.
ExperimentReport estimate(const ExperimentSummary& summary);

/// Alice's answer depends on her hotel and room only.
int alice_outcome(int alpha, double x);
int bob_outcome(int beta, double y);

}  // namespace hotelbell
