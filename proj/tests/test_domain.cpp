#include <doctest.h>

#include <algorithm>
#include <random>

#include "hotelbell/domain.hpp"

using namespace hotelbell;

namespace {

// Endpoints drawn from a coarse dyadic lattice so touching and nested
// intervals show up often.
DomainSet random_domain(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<int> tick(0, 24);
  std::vector<Interval> parts;
  for (int n = count(rng); n > 0; --n) {
    const double a = tick(rng) / 8.0;
    const double b = tick(rng) / 8.0;
    parts.push_back(Interval{std::min(a, b), std::max(a, b)});
  }
  return DomainSet(std::move(parts));
}

bool normalized(const DomainSet& d) {
  const auto& v = d.intervals();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].empty()) return false;
    if (i > 0 && v[i].lo < v[i - 1].hi) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("intersect examples") {
  CHECK(intersect(DomainSet{{0, 1}}, DomainSet{{0.5, 1.5}}) == DomainSet{{0.5, 1}});
  CHECK(intersect(DomainSet{{0, 1}}, DomainSet{{1, 2}}).empty());
  CHECK(intersect(DomainSet{{0, 1}}, DomainSet{{0, 1}}) == DomainSet{{0, 1}});
}

TEST_CASE("is_empty") {
  CHECK(is_empty(DomainSet{}));
  CHECK_FALSE(is_empty(DomainSet{{0, 1}}));
  CHECK(is_empty(intersect(DomainSet{{0, 1}}, DomainSet{{1, 2}})));
}

TEST_CASE("contains is strict at endpoints and excluded points") {
  CHECK(contains(DomainSet{{0, 1}}, 0.5));
  CHECK_FALSE(contains(DomainSet{{0, 1}}, 1.5));
  const DomainSet split{{0, 0.25}, {0.25, 1}};
  CHECK_FALSE(contains(split, 0.25));
  CHECK(contains(split, 0.2));
  CHECK_FALSE(contains(split, 0.0));
  CHECK_FALSE(contains(split, 1.0));
}

TEST_CASE("measure") {
  CHECK(measure(DomainSet{{0, 1}}) == 1.0);
  CHECK(measure(DomainSet{{0, 0.25}, {0.75, 1}}) == 0.5);
  CHECK(measure(DomainSet{}) == 0.0);
}

TEST_CASE("normalization keeps touching intervals apart and merges overlaps") {
  const DomainSet touching{{1, 2}, {0, 1}};
  REQUIRE(touching.size() == 2);
  CHECK(touching.intervals()[0] == Interval{0, 1});
  CHECK_FALSE(touching.contains(1.0));

  const DomainSet overlapping{{0, 1}, {0.5, 2}, {3, 3}, {2.5, 2.0}};
  REQUIRE(overlapping.size() == 1);
  CHECK(overlapping.intervals()[0] == Interval{0, 2});

  CHECK(touching.filled() == DomainSet{{0, 2}});
}

TEST_CASE("formatting") {
  CHECK(to_string(DomainSet{}) == "∅");
  CHECK(to_string(DomainSet{{0, 0.25}, {0.75, 1}}) == "(0,0.25) ∪ (0.75,1)");
}

TEST_CASE("property: intersect is commutative, associative, idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const DomainSet a = random_domain(rng);
    const DomainSet b = random_domain(rng);
    const DomainSet c = random_domain(rng);
    REQUIRE(normalized(a));
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, a) == a);
    CHECK(normalized(intersect(a, b)));
  }
}

TEST_CASE("property: measure and membership of intersections") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> point(-0.5, 3.5);
  std::uniform_int_distribution<int> tick(-4, 28);
  for (int trial = 0; trial < 2000; ++trial) {
    const DomainSet a = random_domain(rng);
    const DomainSet b = random_domain(rng);
    const DomainSet ab = intersect(a, b);
    CHECK(measure(ab) <= std::min(measure(a), measure(b)));
    for (int k = 0; k < 20; ++k) {
      // lattice points hit the endpoints; continuous points hit interiors
      const double x = k % 2 == 0 ? point(rng) : tick(rng) / 8.0;
      CHECK(contains(ab, x) == (contains(a, x) && contains(b, x)));
    }
  }
}
