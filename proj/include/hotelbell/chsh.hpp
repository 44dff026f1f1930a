#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "hotelbell/density.hpp"
#include "hotelbell/partial_rv.hpp"

namespace hotelbell {

/// Hotel choices (alpha for Alice, beta for Bob), each 0 or 1.
struct SettingPair {
  int alpha;
  int beta;
};

/// Canonical order 00, 10, 01, 11, matching the signs (+, +, +, -) of S.
inline constexpr std::array<SettingPair, 4> kSettingPairs{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

std::string pair_label(std::size_t pair);

/// a_alpha on axis "x" and b_beta on axis "y".
PartialRV alice_observable(int alpha);
PartialRV bob_observable(int beta);

/// Four unrelated densities, one per setting pair, each on
/// (alpha, alpha+1) × (beta, beta+1). There is no joint density.
class ChshFamily {
 public:
  ChshFamily(GridDensity rho00, GridDensity rho10, GridDensity rho01, GridDensity rho11);

  const GridDensity& density(std::size_t pair) const { return densities_.at(pair); }
  const std::array<GridDensity, 4>& densities() const noexcept { return densities_; }

 private:
  std::array<GridDensity, 4> densities_;
};

/// e00 + e10 + e01 - e11; InputOutOfRange if any |e| > 1 + 1e-12.
double chsh_value(double e00, double e10, double e01, double e11);
double chsh_value(const std::array<double, 4>& e);

std::array<double, 4> family_expectations(const ChshFamily& family);
std::array<std::pair<double, double>, 4> family_marginals(const ChshFamily& family);

/// Correlators (1, 1, 1, -1) with all eight marginal means exactly zero.
ChshFamily saturating_family();

/// Density on the quarter-aligned 4×4 grid for one setting pair whose
/// correlator is exactly `sign` (±1) with both marginals zero: half the mass
/// on cells where a·b = sign with a = b, half where a = b flipped.
GridDensity saturating_density(SettingPair pair, int sign);

struct OptimizeOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 10000;
};

struct OptimizeResult {
  ChshFamily family;
  std::array<double, 4> achieved;
  std::array<std::size_t, 4> iterations;
};

/// Drives one density's correlator ⟨f g⟩ toward `target` subject to unit
/// mass, zero marginals for f and g, and nonnegative cell masses.
///
/// Projected gradient on (⟨f g⟩ - target)²: each step moves the cell masses
/// along the sign pattern f·g, then projects back onto the feasible
/// polytope with Dykstra's alternating projection between the affine
/// constraint set and the nonnegative orthant. Stops once the correlator
/// moves by less than `tolerance`.
GridDensity optimize_density(const PartialRV& f, const PartialRV& g, const GridDensity& start,
                             double target, const OptimizeOptions& options = {},
                             std::size_t* iterations = nullptr);

/// Each setting pair optimized independently from the uniform density on an
/// nx × ny grid. GridMisaligned unless the quarter thresholds are grid lines.
OptimizeResult optimize_family(const std::array<double, 4>& targets, std::size_t nx,
                               std::size_t ny, const OptimizeOptions& options = {});

/// S evaluated with one shared density, the setting in which the textbook
/// CHSH argument applies. Requires a0, a1 to share a domain and b0, b1 to
/// share a domain (up to finitely many points); DomainMismatch otherwise.
double classical_bound_check(const PartialRV& a0, const PartialRV& a1, const PartialRV& b0,
                             const PartialRV& b1, const GridDensity& rho);

struct ClassicalSuiteResult {
  std::size_t instances = 0;
  std::size_t violations = 0;
  double max_abs_s = 0.0;
  std::size_t points = 0;
  std::size_t pointwise_violations = 0;
  double max_abs_pointwise = 0.0;
};

/// Randomized common-domain instances: ±1 step functions on (0,1) with
/// random breakpoints and random grid densities. A violation is
/// |S| > 2 + 1e-12; the pointwise check evaluates
/// |a0 b0 + a1 b0 + a0 b1 - a1 b1| at random points of each instance.
ClassicalSuiteResult run_classical_suite(std::size_t instances, std::size_t points,
                                         std::uint64_t seed);

}  // namespace hotelbell
