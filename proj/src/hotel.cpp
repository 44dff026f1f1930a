#include "hotelbell/hotel.hpp"

#include <array>
#include <cmath>

#include "hotelbell/error.hpp"

namespace hotelbell {

PartialRV make_observable(double alpha, std::string axis) {
  auto [low, high] = thresholds(alpha);
  const std::array<double, 4> boundaries{alpha, low, high, alpha + 1.0};
  const std::array<double, 3> values{-1.0, 1.0, -1.0};
  return make_step(boundaries, values, std::move(axis));
}

double log_curve(double alpha, double x) {
  const double t = x - alpha;
  if (!(0.0 < t && t < 1.0)) {
    throw Error(ErrorKind::OutOfDomain, "x - alpha = " + format_real(t) + " is outside (0,1)");
  }
  return std::log(16.0 * t * (1.0 - t) / 3.0);
}

std::pair<double, double> thresholds(double alpha) noexcept {
  return {alpha + 0.25, alpha + 0.75};
}

}  // namespace hotelbell
