#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "hotelbell/domain.hpp"
#include "hotelbell/partial_rv.hpp"

namespace hotelbell {

using Rng = std::mt19937_64;

/// Normalized piecewise-constant joint density on x_rect × y_rect.
///
/// The rectangle is cut into nx × ny equal cells; values are stored
/// row-major with the x index major: value(ix, iy) = values[ix * ny + iy].
/// Values are densities, not masses, so Σ value · cell_area = 1.
class GridDensity {
 public:
  /// Rescales `weights` (any nonnegative, not all zero) to unit mass.
  GridDensity(Interval x_rect, Interval y_rect, std::size_t nx, std::size_t ny,
              std::vector<double> weights);

  const Interval& x_rect() const noexcept { return x_rect_; }
  const Interval& y_rect() const noexcept { return y_rect_; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double value(std::size_t ix, std::size_t iy) const { return values_[ix * ny_ + iy]; }
  double x_edge(std::size_t i) const noexcept;
  double y_edge(std::size_t j) const noexcept;
  double cell_width() const noexcept { return x_edge(1) - x_edge(0); }
  double cell_height() const noexcept { return y_edge(1) - y_edge(0); }
  double cell_mass(std::size_t ix, std::size_t iy) const;

  /// Σ value · cell_area; 1 up to rounding for every constructed density.
  double total_mass() const;

  /// Cell by cumulative-mass inversion, then uniform inside the cell.
  std::pair<double, double> sample(Rng& rng) const;

  friend bool operator==(const GridDensity&, const GridDensity&) = default;

 private:
  Interval x_rect_;
  Interval y_rect_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

GridDensity make_grid_density(Interval x_rect, Interval y_rect, std::size_t nx, std::size_t ny,
                              std::vector<double> weights);

/// Single-cell density 1/area; EmptyRect if either side is empty.
GridDensity uniform_density(Interval x_rect, Interval y_rect);

/// ∫ f over each grid column of `rect` cut into `cells` equal parts. Exact
/// for step functions: each column is split at f's breakpoints. Throws
/// DomainMismatch if f is undefined on a set of positive length in `rect`.
std::vector<double> cell_integrals(const PartialRV& f, const Interval& rect, std::size_t cells);

/// ∬ f(x) g(y) ρ(x, y) dx dy, computed exactly by breakpoint refinement.
double expectation(const PartialRV& f, const PartialRV& g, const GridDensity& rho);

/// (∬ f(x) ρ, ∬ g(y) ρ) by the same refinement.
std::pair<double, double> marginal_means(const PartialRV& f, const PartialRV& g,
                                         const GridDensity& rho);

std::pair<double, double> sample(const GridDensity& rho, Rng& rng);

}  // namespace hotelbell
