#include "hotelbell/chsh.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hotelbell/error.hpp"
#include "hotelbell/hotel.hpp"

namespace hotelbell {

namespace {

constexpr double kRangeSlack = 1e-12;
constexpr double kFeasibilityTolerance = 1e-13;
constexpr std::size_t kMaxProjectionSweeps = 100000;

Interval unit_range(int index) {
  return Interval{static_cast<double>(index), static_cast<double>(index) + 1.0};
}

bool on_grid(double point, const Interval& rect, std::size_t cells) {
  for (std::size_t i = 0; i <= cells; ++i) {
    const double e = i == cells ? rect.hi
                                : rect.lo + (rect.hi - rect.lo) * static_cast<double>(i) /
                                                static_cast<double>(cells);
    if (e == point) return true;
  }
  return false;
}

void require_aligned(const PartialRV& f, const Interval& rect, std::size_t cells) {
  for (const Piece& p : f.pieces()) {
    for (double b : {p.interval.lo, p.interval.hi}) {
      if (rect.contains(b) && !on_grid(b, rect, cells)) {
        throw Error(ErrorKind::GridMisaligned,
                    "breakpoint " + format_real(b) + " of '" + f.axis() + "' cuts through a cell of " +
                        std::to_string(cells) + " columns on " + to_string(rect));
      }
    }
  }
}

/// Value of f on each cell; f must be constant per cell (aligned grid).
std::vector<double> cell_signs(const PartialRV& f, const Interval& rect, std::size_t cells) {
  std::vector<double> out(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = rect.lo + (rect.hi - rect.lo) * static_cast<double>(i) / static_cast<double>(cells);
    const double hi = i + 1 == cells ? rect.hi
                                     : rect.lo + (rect.hi - rect.lo) * static_cast<double>(i + 1) /
                                                     static_cast<double>(cells);
    auto v = f.find(0.5 * (lo + hi));
    if (!v) {
      throw Error(ErrorKind::DomainMismatch, "'" + f.axis() + "' is undefined on " +
                                                 to_string(Interval{lo, hi}));
    }
    out[i] = *v;
  }
  return out;
}

/// Euclidean projection onto {m : M m = r} ∩ {m >= 0}.
class FeasibleSetProjector {
 public:
  FeasibleSetProjector(Eigen::MatrixXd constraints, Eigen::VectorXd rhs)
      : constraints_(std::move(constraints)), rhs_(std::move(rhs)) {
    const Eigen::MatrixXd gram = constraints_ * constraints_.transpose();
    gram_pinv_ = gram.completeOrthogonalDecomposition().pseudoInverse();
  }

  Eigen::VectorXd affine(const Eigen::VectorXd& m) const {
    return m - constraints_.transpose() * (gram_pinv_ * (constraints_ * m - rhs_));
  }

  double residual(const Eigen::VectorXd& m) const {
    return (constraints_ * m - rhs_).cwiseAbs().maxCoeff();
  }

  // Dykstra; the affine set needs no correction term, only the orthant does.
  Eigen::VectorXd operator()(const Eigen::VectorXd& start) const {
    Eigen::VectorXd y = start;
    Eigen::VectorXd correction = Eigen::VectorXd::Zero(start.size());
    for (std::size_t sweep = 0; sweep < kMaxProjectionSweeps; ++sweep) {
      const Eigen::VectorXd z = affine(y);
      const Eigen::VectorXd shifted = z + correction;
      y = shifted.cwiseMax(0.0);
      correction = shifted - y;
      if (residual(y) <= kFeasibilityTolerance) return y;
    }
    throw Error(ErrorKind::NonConvergence,
                "no nonnegative cell masses satisfy the marginal constraints");
  }

 private:
  Eigen::MatrixXd constraints_;
  Eigen::VectorXd rhs_;
  Eigen::MatrixXd gram_pinv_;
};

}  // namespace

std::string pair_label(std::size_t pair) {
  const SettingPair& p = kSettingPairs.at(pair);
  return std::to_string(p.alpha) + std::to_string(p.beta);
}

PartialRV alice_observable(int alpha) { return make_observable(alpha, "x"); }
PartialRV bob_observable(int beta) { return make_observable(beta, "y"); }

ChshFamily::ChshFamily(GridDensity rho00, GridDensity rho10, GridDensity rho01, GridDensity rho11)
    : densities_{std::move(rho00), std::move(rho10), std::move(rho01), std::move(rho11)} {
  for (std::size_t k = 0; k < 4; ++k) {
    const SettingPair& p = kSettingPairs[k];
    const GridDensity& rho = densities_[k];
    if (!(rho.x_rect() == unit_range(p.alpha)) || !(rho.y_rect() == unit_range(p.beta))) {
      throw Error(ErrorKind::DomainMismatch,
                  "rho" + pair_label(k) + " lives on " + to_string(rho.x_rect()) + " × " +
                      to_string(rho.y_rect()) + ", expected " + to_string(unit_range(p.alpha)) +
                      " × " + to_string(unit_range(p.beta)));
    }
  }
}

double chsh_value(double e00, double e10, double e01, double e11) {
  for (double e : {e00, e10, e01, e11}) {
    if (!(std::abs(e) <= 1.0 + kRangeSlack)) {
      throw Error(ErrorKind::InputOutOfRange, "correlator " + format_real(e) + " outside [-1, 1]");
    }
  }
  return e00 + e10 + e01 - e11;
}

double chsh_value(const std::array<double, 4>& e) { return chsh_value(e[0], e[1], e[2], e[3]); }

std::array<double, 4> family_expectations(const ChshFamily& family) {
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const SettingPair& p = kSettingPairs[k];
    out[k] = expectation(alice_observable(p.alpha), bob_observable(p.beta), family.density(k));
  }
  return out;
}

std::array<std::pair<double, double>, 4> family_marginals(const ChshFamily& family) {
  std::array<std::pair<double, double>, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const SettingPair& p = kSettingPairs[k];
    out[k] = marginal_means(alice_observable(p.alpha), bob_observable(p.beta), family.density(k));
  }
  return out;
}

GridDensity saturating_density(SettingPair pair, int sign) {
  constexpr std::size_t kCells = 4;
  auto middle = [](std::size_t i) { return i == 1 || i == 2; };
  std::vector<double> weights(kCells * kCells, 0.0);
  for (std::size_t i = 0; i < kCells; ++i) {
    for (std::size_t j = 0; j < kCells; ++j) {
      const int a = middle(i) ? 1 : -1;
      const int b = middle(j) ? 1 : -1;
      if (a * b == sign) weights[i * kCells + j] = 1.0;
    }
  }
  return GridDensity(unit_range(pair.alpha), unit_range(pair.beta), kCells, kCells,
                     std::move(weights));
}

ChshFamily saturating_family() {
  return ChshFamily(saturating_density(kSettingPairs[0], 1), saturating_density(kSettingPairs[1], 1),
                    saturating_density(kSettingPairs[2], 1),
                    saturating_density(kSettingPairs[3], -1));
}

GridDensity optimize_density(const PartialRV& f, const PartialRV& g, const GridDensity& start,
                             double target, const OptimizeOptions& options,
                             std::size_t* iterations) {
  if (!(std::abs(target) <= 1.0)) {
    throw Error(ErrorKind::InputOutOfRange, "target " + format_real(target) + " outside [-1, 1]");
  }
  if (!(options.tolerance > 0.0)) {
    throw Error(ErrorKind::InputOutOfRange, "tolerance must be positive");
  }
  const std::size_t nx = start.nx();
  const std::size_t ny = start.ny();
  require_aligned(f, start.x_rect(), nx);
  require_aligned(g, start.y_rect(), ny);
  const auto fs = cell_signs(f, start.x_rect(), nx);
  const auto gs = cell_signs(g, start.y_rect(), ny);

  const auto n = static_cast<Eigen::Index>(nx * ny);
  Eigen::MatrixXd constraints(3, n);
  Eigen::VectorXd correlation(n);
  Eigen::VectorXd masses(n);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const auto k = static_cast<Eigen::Index>(i * ny + j);
      constraints(0, k) = 1.0;
      constraints(1, k) = fs[i];
      constraints(2, k) = gs[j];
      correlation(k) = fs[i] * gs[j];
      masses(k) = start.cell_mass(i, j);
    }
  }
  const FeasibleSetProjector project(constraints, Eigen::Vector3d(1.0, 0.0, 0.0));
  // step 1/|c|² lands the unconstrained update exactly on ⟨f g⟩ = target
  const double step = 1.0 / correlation.squaredNorm();

  masses = project(masses);
  double current = correlation.dot(masses);
  std::size_t iter = 0;
  for (;;) {
    if (iter == options.max_iterations) {
      throw Error(ErrorKind::NonConvergence,
                  "correlator still moving after " + std::to_string(iter) + " iterations");
    }
    ++iter;
    masses = project(masses + step * (target - current) * correlation);
    const double next = correlation.dot(masses);
    const bool settled = std::abs(next - current) < options.tolerance;
    current = next;
    if (settled) break;
  }
  if (iterations != nullptr) *iterations = iter;

  const double area = start.cell_width() * start.cell_height();
  std::vector<double> weights(masses.data(), masses.data() + masses.size());
  for (double& w : weights) w /= area;
  return GridDensity(start.x_rect(), start.y_rect(), nx, ny, std::move(weights));
}

OptimizeResult optimize_family(const std::array<double, 4>& targets, std::size_t nx,
                               std::size_t ny, const OptimizeOptions& options) {
  std::vector<GridDensity> densities;
  std::array<std::size_t, 4> iterations{};
  for (std::size_t k = 0; k < 4; ++k) {
    const SettingPair& p = kSettingPairs[k];
    const GridDensity start(unit_range(p.alpha), unit_range(p.beta), nx, ny,
                            std::vector<double>(nx * ny, 1.0));
    densities.push_back(optimize_density(alice_observable(p.alpha), bob_observable(p.beta), start,
                                         targets[k], options, &iterations[k]));
  }
  ChshFamily family(densities[0], densities[1], densities[2], densities[3]);
  const auto achieved = family_expectations(family);
  return OptimizeResult{std::move(family), achieved, iterations};
}

double classical_bound_check(const PartialRV& a0, const PartialRV& a1, const PartialRV& b0,
                             const PartialRV& b1, const GridDensity& rho) {
  if (!(a0.domain().filled() == a1.domain().filled())) {
    throw Error(ErrorKind::DomainMismatch, "a0 on " + to_string(a0.domain()) + " but a1 on " +
                                               to_string(a1.domain()) +
                                               "; no common domain for a0 + a1");
  }
  if (!(b0.domain().filled() == b1.domain().filled())) {
    throw Error(ErrorKind::DomainMismatch, "b0 on " + to_string(b0.domain()) + " but b1 on " +
                                               to_string(b1.domain()) +
                                               "; no common domain for b0 + b1");
  }
  return expectation(a0, b0, rho) + expectation(a1, b0, rho) + expectation(a0, b1, rho) -
         expectation(a1, b1, rho);
}

ClassicalSuiteResult run_classical_suite(std::size_t instances, std::size_t points,
                                         std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> breaks(0, 5);
  std::uniform_int_distribution<std::size_t> cells(1, 6);
  std::bernoulli_distribution coin(0.5);

  auto random_step = [&](const std::string& axis) {
    std::vector<double> boundaries{0.0, 1.0};
    for (int i = breaks(rng); i > 0; --i) boundaries.push_back(unit(rng));
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());
    std::vector<double> values(boundaries.size() - 1);
    for (double& v : values) v = coin(rng) ? 1.0 : -1.0;
    return make_step(boundaries, values, axis);
  };

  ClassicalSuiteResult result;
  const Interval unit_interval{0.0, 1.0};
  for (std::size_t n = 0; n < instances; ++n) {
    const PartialRV a0 = random_step("x");
    const PartialRV a1 = random_step("x");
    const PartialRV b0 = random_step("y");
    const PartialRV b1 = random_step("y");
    const std::size_t nx = cells(rng);
    const std::size_t ny = cells(rng);
    std::vector<double> weights(nx * ny);
    for (double& w : weights) w = unit(rng);
    weights[0] += 1e-3;
    const GridDensity rho(unit_interval, unit_interval, nx, ny, std::move(weights));

    const double s = std::abs(classical_bound_check(a0, a1, b0, b1, rho));
    ++result.instances;
    result.max_abs_s = std::max(result.max_abs_s, s);
    if (s > 2.0 + kRangeSlack) ++result.violations;

    const std::size_t per_instance = instances == 0 ? 0 : (points + instances - 1) / instances;
    for (std::size_t taken = 0; taken < per_instance && result.points < points;) {
      const double x = unit(rng);
      const double y = unit(rng);
      auto va0 = a0.find(x), va1 = a1.find(x), vb0 = b0.find(y), vb1 = b1.find(y);
      // a draw on a breakpoint has probability ~0; just redraw
      if (!va0 || !va1 || !vb0 || !vb1) continue;
      ++taken;
      const double pointwise = std::abs(*va0 * *vb0 + *va1 * *vb0 + *va0 * *vb1 - *va1 * *vb1);
      ++result.points;
      result.max_abs_pointwise = std::max(result.max_abs_pointwise, pointwise);
      if (pointwise > 2.0) ++result.pointwise_violations;
    }
  }
  return result;
}

}  // namespace hotelbell
