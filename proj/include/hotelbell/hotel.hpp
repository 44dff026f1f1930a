#pragma once

#include <string>
#include <utility>

#include "hotelbell/partial_rv.hpp"

namespace hotelbell {

/// Questionnaire outcome for hotel `alpha`: rooms are numbered (alpha, alpha+1),
/// the middle band (alpha+1/4, alpha+3/4) answers +1 and both edge bands -1.
/// The band edges and the hotel's room-range ends are excluded points.
PartialRV make_observable(double alpha, std::string axis = "x");

/// ln(16 t (1 - t) / 3) with t = x - alpha; OutOfDomain unless 0 < t < 1.
double log_curve(double alpha, double x);

/// Sign-change points of make_observable(alpha). 16t(1-t) = 3 factors as
/// (4t-1)(4t-3) = 0, so the roots are exact quarters.
std::pair<double, double> thresholds(double alpha) noexcept;

}  // namespace hotelbell
