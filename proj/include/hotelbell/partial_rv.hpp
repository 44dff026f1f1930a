#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hotelbell/domain.hpp"

namespace hotelbell {

struct Piece {
  Interval interval;
  double value = 0.0;

  friend bool operator==(const Piece&, const Piece&) = default;
};

enum class CombineOp { Sum, Difference, Product };

/// A random variable that exists only on its domain: a step function whose
/// pieces are open intervals. Every piece endpoint is excluded from the
/// domain, so the value at a breakpoint is undefined rather than zero.
class PartialRV {
 public:
  /// Pieces must be nonempty, sorted and pairwise disjoint.
  PartialRV(std::vector<Piece> pieces, std::string axis);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const DomainSet& domain() const noexcept { return domain_; }
  const std::string& axis() const noexcept { return axis_; }

  /// Value at x; throws UndefinedPoint on an excluded breakpoint and
  /// OutOfDomain anywhere else outside the pieces.
  double eval(double x) const;

  /// Non-throwing lookup for hot loops.
  std::optional<double> find(double x) const noexcept;

  /// True when x is an endpoint of some piece.
  bool is_breakpoint(double x) const noexcept;

  friend bool operator==(const PartialRV&, const PartialRV&) = default;

 private:
  std::vector<Piece> pieces_;
  DomainSet domain_;
  std::string axis_;
};

/// Pieces (b[i], b[i+1]) -> values[i]; all boundaries excluded.
PartialRV make_step(std::span<const double> boundaries, std::span<const double> values,
                    std::string axis);

/// Pointwise combination on the intersection of both domains, refined at the
/// union of both breakpoint sets. Throws AxisMismatch for different axes and
/// EmptyDomain when the functions share no point: the result does not exist.
PartialRV combine(const PartialRV& f, const PartialRV& g, CombineOp op);

PartialRV shift(const PartialRV& f, double offset);
PartialRV negate(const PartialRV& f);

}  // namespace hotelbell
