#include "hotelbell/partial_rv.hpp"

#include <algorithm>

#include "hotelbell/error.hpp"

namespace hotelbell {

namespace {

DomainSet domain_of(const std::vector<Piece>& pieces) {
  std::vector<Interval> intervals;
  intervals.reserve(pieces.size());
  for (const Piece& p : pieces) intervals.push_back(p.interval);
  return DomainSet(std::move(intervals));
}

double apply(CombineOp op, double a, double b) {
  switch (op) {
    case CombineOp::Sum: return a + b;
    case CombineOp::Difference: return a - b;
    case CombineOp::Product: return a * b;
  }
  return 0.0;
}

}  // namespace

PartialRV::PartialRV(std::vector<Piece> pieces, std::string axis)
    : pieces_(std::move(pieces)), axis_(std::move(axis)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].interval.empty()) {
      throw Error(ErrorKind::NonMonotoneBoundaries, "piece " + std::to_string(i) + " is empty");
    }
    if (i > 0 && pieces_[i].interval.lo < pieces_[i - 1].interval.hi) {
      throw Error(ErrorKind::NonMonotoneBoundaries,
                  "pieces " + std::to_string(i - 1) + " and " + std::to_string(i) + " overlap");
    }
  }
  domain_ = domain_of(pieces_);
}

std::optional<double> PartialRV::find(double x) const noexcept {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.interval.hi; });
  if (it != pieces_.end() && it->interval.contains(x)) return it->value;
  return std::nullopt;
}

bool PartialRV::is_breakpoint(double x) const noexcept {
  return std::any_of(pieces_.begin(), pieces_.end(), [x](const Piece& p) {
    return p.interval.lo == x || p.interval.hi == x;
  });
}

double PartialRV::eval(double x) const {
  if (auto v = find(x)) return *v;
  if (is_breakpoint(x)) {
    throw Error(ErrorKind::UndefinedPoint, "x = " + format_real(x) + " is an excluded breakpoint");
  }
  throw Error(ErrorKind::OutOfDomain,
              "x = " + format_real(x) + " is outside " + to_string(domain_));
}

PartialRV make_step(std::span<const double> boundaries, std::span<const double> values,
                    std::string axis) {
  if (boundaries.size() < 2 || values.size() + 1 != boundaries.size()) {
    throw Error(ErrorKind::ArityMismatch, std::to_string(boundaries.size()) + " boundaries need " +
                                              "one fewer values, got " +
                                              std::to_string(values.size()));
  }
  std::vector<Piece> pieces;
  pieces.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(boundaries[i] < boundaries[i + 1])) {
      throw Error(ErrorKind::NonMonotoneBoundaries,
                  "boundary " + std::to_string(i + 1) + " (" + format_real(boundaries[i + 1]) +
                      ") does not exceed " + format_real(boundaries[i]));
    }
    pieces.push_back(Piece{Interval{boundaries[i], boundaries[i + 1]}, values[i]});
  }
  return PartialRV(std::move(pieces), std::move(axis));
}

PartialRV combine(const PartialRV& f, const PartialRV& g, CombineOp op) {
  if (f.axis() != g.axis()) {
    throw Error(ErrorKind::AxisMismatch, "cannot combine '" + f.axis() + "' with '" + g.axis() + "'");
  }
  const auto& fs = f.pieces();
  const auto& gs = g.pieces();
  std::vector<Piece> out;
  std::size_t i = 0, j = 0;
  while (i < fs.size() && j < gs.size()) {
    Interval overlap = intersect(fs[i].interval, gs[j].interval);
    if (!overlap.empty()) out.push_back(Piece{overlap, apply(op, fs[i].value, gs[j].value)});
    if (fs[i].interval.hi < gs[j].interval.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::EmptyDomain, to_string(f.domain()) + " ∩ " + to_string(g.domain()) +
                                            " = ∅; the combination does not exist");
  }
  return PartialRV(std::move(out), f.axis());
}

PartialRV shift(const PartialRV& f, double offset) {
  std::vector<Piece> moved = f.pieces();
  for (Piece& p : moved) {
    p.interval.lo += offset;
    p.interval.hi += offset;
  }
  return PartialRV(std::move(moved), f.axis());
}

PartialRV negate(const PartialRV& f) {
  std::vector<Piece> flipped = f.pieces();
  for (Piece& p : flipped) p.value = -p.value;
  return PartialRV(std::move(flipped), f.axis());
}

}  // namespace hotelbell
