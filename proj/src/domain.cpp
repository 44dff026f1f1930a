#include "hotelbell/domain.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace hotelbell {

Interval intersect(const Interval& a, const Interval& b) noexcept {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

DomainSet::DomainSet(Interval interval) : DomainSet(std::vector<Interval>{interval}) {}

DomainSet::DomainSet(std::initializer_list<Interval> intervals)
    : DomainSet(std::vector<Interval>(intervals)) {}

DomainSet::DomainSet(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& i) { return i.empty(); });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& next : intervals) {
    if (!intervals_.empty() && next.lo < intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, next.hi);
    } else {
      intervals_.push_back(next);
    }
  }
}

bool DomainSet::contains(double x) const noexcept {
  // first interval whose hi exceeds x is the only candidate
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& i) { return v < i.hi; });
  return it != intervals_.end() && it->contains(x);
}

double DomainSet::measure() const noexcept {
  double total = 0.0;
  for (const Interval& i : intervals_) total += i.length();
  return total;
}

Interval DomainSet::hull() const noexcept {
  if (intervals_.empty()) return Interval{0.0, 0.0};
  return Interval{intervals_.front().lo, intervals_.back().hi};
}

DomainSet DomainSet::translated(double offset) const {
  DomainSet out;
  out.intervals_.reserve(intervals_.size());
  for (const Interval& i : intervals_) {
    Interval moved{i.lo + offset, i.hi + offset};
    if (!moved.empty()) out.intervals_.push_back(moved);
  }
  return out;
}

DomainSet DomainSet::filled() const {
  DomainSet out;
  for (const Interval& i : intervals_) {
    if (!out.intervals_.empty() && out.intervals_.back().hi == i.lo) {
      out.intervals_.back().hi = i.hi;
    } else {
      out.intervals_.push_back(i);
    }
  }
  return out;
}

DomainSet intersect(const DomainSet& a, const DomainSet& b) {
  std::vector<Interval> out;
  const auto& xs = a.intervals();
  const auto& ys = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    Interval overlap = intersect(xs[i], ys[j]);
    if (!overlap.empty()) out.push_back(overlap);
    if (xs[i].hi < ys[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return DomainSet(std::move(out));
}

bool is_empty(const DomainSet& d) noexcept { return d.empty(); }
bool contains(const DomainSet& d, double x) noexcept { return d.contains(x); }
double measure(const DomainSet& d) noexcept { return d.measure(); }

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string to_string(const Interval& interval) {
  return "(" + format_real(interval.lo) + "," + format_real(interval.hi) + ")";
}

std::string to_string(const DomainSet& d) {
  if (d.empty()) return "∅";
  std::string out;
  for (const Interval& i : d.intervals()) {
    if (!out.empty()) out += " ∪ ";
    out += to_string(i);
  }
  return out;
}

}  // namespace hotelbell
