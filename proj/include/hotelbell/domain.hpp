#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace hotelbell {

/// Open interval (lo, hi). Empty iff hi <= lo.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const noexcept { return !(lo < hi); }
  bool contains(double x) const noexcept { return lo < x && x < hi; }
  double length() const noexcept { return empty() ? 0.0 : hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval intersect(const Interval& a, const Interval& b) noexcept;

/// Finite union of disjoint open intervals on one real axis.
///
/// Stored intervals are nonempty, sorted by lo and pairwise disjoint.
/// Intervals that merely touch, like (0,1) and (1,2), are kept apart: the
/// shared endpoint is not in either open interval, so it stays excluded.
/// Only genuinely overlapping inputs are merged. Endpoint comparison is exact.
class DomainSet {
 public:
  DomainSet() = default;
  DomainSet(Interval interval);  // NOLINT(google-explicit-constructor)
  DomainSet(std::initializer_list<Interval> intervals);
  explicit DomainSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  std::size_t size() const noexcept { return intervals_.size(); }

  bool contains(double x) const noexcept;
  double measure() const noexcept;

  /// Smallest interval containing the set; empty interval for the empty set.
  Interval hull() const noexcept;

  DomainSet translated(double offset) const;

  /// Same set with isolated excluded points filled in: touching intervals
  /// are joined. Two sets that differ by finitely many points have equal
  /// filled() forms.
  DomainSet filled() const;

  friend bool operator==(const DomainSet&, const DomainSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

DomainSet intersect(const DomainSet& a, const DomainSet& b);
bool is_empty(const DomainSet& d) noexcept;
bool contains(const DomainSet& d, double x) noexcept;
double measure(const DomainSet& d) noexcept;

/// Shortest decimal text that reads back to the same double.
std::string format_real(double value);

/// "(0,1)", "(0,0.25) ∪ (0.25,1)", or "∅".
std::string to_string(const Interval& interval);
std::string to_string(const DomainSet& d);

}  // namespace hotelbell
