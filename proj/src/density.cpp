#include "hotelbell/density.hpp"

#include <algorithm>
#include <cmath>

#include "hotelbell/error.hpp"

namespace hotelbell {

namespace {

double edge(const Interval& rect, std::size_t n, std::size_t i) noexcept {
  if (i == n) return rect.hi;
  return rect.lo + (rect.hi - rect.lo) * static_cast<double>(i) / static_cast<double>(n);
}

}  // namespace

GridDensity::GridDensity(Interval x_rect, Interval y_rect, std::size_t nx, std::size_t ny,
                         std::vector<double> weights)
    : x_rect_(x_rect), y_rect_(y_rect), nx_(nx), ny_(ny), values_(std::move(weights)) {
  if (x_rect_.empty() || y_rect_.empty()) {
    throw Error(ErrorKind::EmptyRect,
                "rectangle " + to_string(x_rect_) + " × " + to_string(y_rect_) + " is empty");
  }
  if (nx_ == 0 || ny_ == 0 || values_.size() != nx_ * ny_) {
    throw Error(ErrorKind::ArityMismatch, "grid " + std::to_string(nx_) + "×" +
                                              std::to_string(ny_) + " needs that many weights, got " +
                                              std::to_string(values_.size()));
  }
  double total = 0.0;
  for (double w : values_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::NegativeWeight, "weight " + format_real(w) + " is not a finite "
                                                 "nonnegative number");
    }
    total += w;
  }
  if (total == 0.0) throw Error(ErrorKind::ZeroTotalMass, "all weights are zero");

  const double area = cell_width() * cell_height();
  for (double& w : values_) w = w / (total * area);

  cumulative_.resize(values_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    running += values_[k] * area;
    cumulative_[k] = running;
  }
}

double GridDensity::x_edge(std::size_t i) const noexcept { return edge(x_rect_, nx_, i); }
double GridDensity::y_edge(std::size_t j) const noexcept { return edge(y_rect_, ny_, j); }

double GridDensity::cell_mass(std::size_t ix, std::size_t iy) const {
  return value(ix, iy) * cell_width() * cell_height();
}

double GridDensity::total_mass() const {
  double total = 0.0;
  for (double v : values_) total += v;
  return total * cell_width() * cell_height();
}

std::pair<double, double> GridDensity::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const auto k = static_cast<std::size_t>(it - cumulative_.begin());
  const std::size_t ix = k / ny_;
  const std::size_t iy = k % ny_;
  const double x = x_edge(ix) + unit(rng) * (x_edge(ix + 1) - x_edge(ix));
  const double y = y_edge(iy) + unit(rng) * (y_edge(iy + 1) - y_edge(iy));
  return {x, y};
}

GridDensity make_grid_density(Interval x_rect, Interval y_rect, std::size_t nx, std::size_t ny,
                              std::vector<double> weights) {
  return GridDensity(x_rect, y_rect, nx, ny, std::move(weights));
}

GridDensity uniform_density(Interval x_rect, Interval y_rect) {
  return GridDensity(x_rect, y_rect, 1, 1, {1.0});
}

std::vector<double> cell_integrals(const PartialRV& f, const Interval& rect, std::size_t cells) {
  std::vector<double> out(cells, 0.0);
  const auto& pieces = f.pieces();
  for (std::size_t k = 0; k < cells; ++k) {
    const Interval cell{edge(rect, cells, k), edge(rect, cells, k + 1)};
    // pieces overlapping the cell must tile it, touching only at excluded points
    double covered_to = cell.lo;
    double integral = 0.0;
    for (const Piece& p : pieces) {
      if (p.interval.hi <= cell.lo) continue;
      if (p.interval.lo >= cell.hi) break;
      if (p.interval.lo > covered_to) break;
      const Interval overlap = intersect(p.interval, cell);
      integral += p.value * overlap.length();
      covered_to = overlap.hi;
    }
    if (covered_to < cell.hi) {
      throw Error(ErrorKind::DomainMismatch,
                  "'" + f.axis() + "' observable with domain " + to_string(f.domain()) +
                      " is undefined on part of " + to_string(cell));
    }
    out[k] = integral;
  }
  return out;
}

double expectation(const PartialRV& f, const PartialRV& g, const GridDensity& rho) {
  const auto fx = cell_integrals(f, rho.x_rect(), rho.nx());
  const auto gy = cell_integrals(g, rho.y_rect(), rho.ny());
  double total = 0.0;
  for (std::size_t i = 0; i < rho.nx(); ++i) {
    for (std::size_t j = 0; j < rho.ny(); ++j) total += rho.value(i, j) * fx[i] * gy[j];
  }
  return total;
}

std::pair<double, double> marginal_means(const PartialRV& f, const PartialRV& g,
                                         const GridDensity& rho) {
  const auto fx = cell_integrals(f, rho.x_rect(), rho.nx());
  const auto gy = cell_integrals(g, rho.y_rect(), rho.ny());
  double mean_f = 0.0;
  double mean_g = 0.0;
  for (std::size_t i = 0; i < rho.nx(); ++i) {
    for (std::size_t j = 0; j < rho.ny(); ++j) {
      const double v = rho.value(i, j);
      mean_f += v * fx[i] * (rho.y_edge(j + 1) - rho.y_edge(j));
      mean_g += v * gy[j] * (rho.x_edge(i + 1) - rho.x_edge(i));
    }
  }
  return {mean_f, mean_g};
}

std::pair<double, double> sample(const GridDensity& rho, Rng& rng) { return rho.sample(rng); }

}  // namespace hotelbell
