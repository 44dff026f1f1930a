#include <doctest.h>

#include <array>
#include <random>

#include "hotelbell/error.hpp"
#include "hotelbell/hotel.hpp"
#include "hotelbell/partial_rv.hpp"

using namespace hotelbell;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

PartialRV a0_by_hand() {
  const std::array<double, 4> b{0, 0.25, 0.75, 1};
  const std::array<double, 3> v{-1, 1, -1};
  return make_step(b, v, "x");
}

PartialRV random_step(std::mt19937_64& rng, const std::string& axis) {
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_int_distribution<int> tick(0, 32);
  std::uniform_int_distribution<int> value(-2, 2);
  std::vector<double> bounds;
  const int n = count(rng) + 1;
  while (static_cast<int>(bounds.size()) < n) {
    bounds.push_back(tick(rng) / 16.0);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  }
  std::vector<double> values(bounds.size() - 1);
  for (double& v : values) v = value(rng);
  return make_step(bounds, values, axis);
}

}  // namespace

TEST_CASE("make_step") {
  const PartialRV a0 = a0_by_hand();
  CHECK(a0 == make_observable(0.0));
  CHECK(a0.pieces().size() == 3);

  const std::array<double, 2> unit{0, 1};
  const std::array<double, 1> plus{1};
  const PartialRV one = make_step(unit, plus, "x");
  CHECK(one.eval(0.3) == 1.0);

  const std::array<double, 3> bad{0, 0.25, 0.2};
  const std::array<double, 2> two{1, 1};
  CHECK(kind_of([&] { make_step(bad, two, "x"); }) == ErrorKind::NonMonotoneBoundaries);
  CHECK(kind_of([&] { make_step(unit, two, "x"); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("eval distinguishes out-of-domain from undefined breakpoints") {
  const PartialRV a0 = a0_by_hand();
  CHECK(a0.eval(0.5) == 1.0);
  CHECK(a0.eval(0.1) == -1.0);
  CHECK(kind_of([&] { a0.eval(1.5); }) == ErrorKind::OutOfDomain);
  CHECK(kind_of([&] { a0.eval(0.25); }) == ErrorKind::UndefinedPoint);
  CHECK(kind_of([&] { a0.eval(1.0); }) == ErrorKind::UndefinedPoint);
  CHECK_FALSE(a0.find(0.75).has_value());
}

TEST_CASE("combine on overlapping hotels") {
  // a0 + a_0.5 on (0.5, 1): a0 = +1 and a_0.5 = -1 on (0.5, 0.75),
  // a0 = -1 and a_0.5 = +1 on (0.75, 1); the sum vanishes on both.
  const PartialRV sum = combine(make_observable(0.0), make_observable(0.5), CombineOp::Sum);
  REQUIRE(sum.pieces().size() == 2);
  CHECK(sum.pieces()[0] == Piece{Interval{0.5, 0.75}, 0.0});
  CHECK(sum.pieces()[1] == Piece{Interval{0.75, 1.0}, 0.0});
  CHECK(sum.domain() == DomainSet{{0.5, 0.75}, {0.75, 1.0}});
  CHECK(kind_of([&] { sum.eval(0.75); }) == ErrorKind::UndefinedPoint);

  const PartialRV prod = combine(make_observable(0.0), make_observable(0.5), CombineOp::Product);
  CHECK(prod.eval(0.6) == -1.0);
  CHECK(prod.eval(0.9) == -1.0);

  // a quarter shift gives the full {-2, 0, +2} range
  const PartialRV quarter = combine(make_observable(0.0), make_observable(0.25), CombineOp::Sum);
  CHECK(quarter.eval(0.3) == 0.0);
  CHECK(quarter.eval(0.6) == 2.0);
  CHECK(quarter.eval(0.9) == 0.0);
}

TEST_CASE("combine across disjoint hotels does not exist") {
  const PartialRV a0 = make_observable(0.0);
  const PartialRV a1 = make_observable(1.0);
  CHECK(kind_of([&] { combine(a0, a1, CombineOp::Sum); }) == ErrorKind::EmptyDomain);
  CHECK(kind_of([&] { combine(a0, a1, CombineOp::Product); }) == ErrorKind::EmptyDomain);
  CHECK(kind_of([&] { combine(a0, a1, CombineOp::Difference); }) == ErrorKind::EmptyDomain);
  CHECK(kind_of([&] { combine(a0, make_observable(0.0, "y"), CombineOp::Sum); }) ==
        ErrorKind::AxisMismatch);
}

TEST_CASE("shift") {
  const PartialRV a0 = make_observable(0.0);
  const PartialRV a1 = shift(a0, 1.0);
  CHECK(a1 == make_observable(1.0));
  CHECK(a1.domain() == DomainSet{{1, 1.25}, {1.25, 1.75}, {1.75, 2}});
  CHECK(a1.eval(1.5) == 1.0);
  CHECK(shift(a0, 0.0) == a0);
  // exact for dyadic offsets; decimal offsets round
  CHECK(shift(shift(a0, 0.375), 0.625) == shift(a0, 1.0));
  const PartialRV twice = shift(shift(a0, 0.3), 0.7);
  const PartialRV once = shift(a0, 1.0);
  REQUIRE(twice.pieces().size() == once.pieces().size());
  for (std::size_t i = 0; i < once.pieces().size(); ++i) {
    CHECK(twice.pieces()[i].interval.lo == doctest::Approx(once.pieces()[i].interval.lo).epsilon(1e-15));
    CHECK(twice.pieces()[i].interval.hi == doctest::Approx(once.pieces()[i].interval.hi).epsilon(1e-15));
    CHECK(twice.pieces()[i].value == once.pieces()[i].value);
  }
}

TEST_CASE("property: combine matches pointwise algebra") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> point(-0.25, 2.25);
  const std::array<CombineOp, 3> ops{CombineOp::Sum, CombineOp::Difference, CombineOp::Product};
  int nonempty = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const PartialRV f = random_step(rng, "x");
    const PartialRV g = random_step(rng, "x");
    const DomainSet shared = intersect(f.domain(), g.domain());
    for (CombineOp op : ops) {
      if (shared.empty()) {
        CHECK(kind_of([&] { combine(f, g, op); }) == ErrorKind::EmptyDomain);
        continue;
      }
      ++nonempty;
      const PartialRV h = combine(f, g, op);
      // domain = intersection minus every breakpoint of either operand
      CHECK(h.domain().filled() == shared.filled());
      for (const Piece& p : f.pieces()) {
        CHECK_FALSE(h.domain().contains(p.interval.lo));
        CHECK_FALSE(h.domain().contains(p.interval.hi));
      }
      for (int k = 0; k < 20; ++k) {
        const double x = point(rng);
        auto fx = f.find(x), gx = g.find(x), hx = h.find(x);
        REQUIRE(hx.has_value() == (fx.has_value() && gx.has_value()));
        if (!hx) continue;
        const double expected = op == CombineOp::Sum          ? *fx + *gx
                                : op == CombineOp::Difference ? *fx - *gx
                                                              : *fx * *gx;
        CHECK(*hx == expected);
      }
      if (op != CombineOp::Difference) CHECK(combine(g, f, op) == h);
    }
  }
  CHECK(nonempty > 1000);
}

TEST_CASE("property: shift translates domain and values") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> tick(-16, 16);
  std::uniform_real_distribution<double> point(-1.5, 3.5);
  for (int trial = 0; trial < 500; ++trial) {
    const PartialRV f = random_step(rng, "x");
    const double offset = tick(rng) / 8.0;
    const PartialRV g = shift(f, offset);
    CHECK(g.domain() == f.domain().translated(offset));
    for (int k = 0; k < 20; ++k) {
      const double x = point(rng);
      CHECK(g.find(x) == f.find(x - offset));
    }
  }
}
