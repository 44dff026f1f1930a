#include <doctest.h>

#include <cmath>
#include <random>

#include "hotelbell/chsh.hpp"
#include "hotelbell/error.hpp"
#include "hotelbell/hotel.hpp"

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

const Interval kUnit{0, 1};

}  // namespace

TEST_CASE("chsh_value") {
  CHECK(chsh_value(1, 1, 1, -1) == 4.0);
  CHECK(chsh_value(0, 0, 0, 0) == 0.0);
  CHECK(chsh_value(1, 1, 1, 1) == 2.0);
  CHECK(chsh_value(1 + 1e-13, 0, 0, 0) == doctest::Approx(1.0));
  CHECK(kind_of([] { chsh_value(1.5, 0, 0, 0); }) == ErrorKind::InputOutOfRange);
  CHECK(kind_of([] { chsh_value(0, 0, 0, -1.001); }) == ErrorKind::InputOutOfRange);
}

TEST_CASE("saturating family is exact") {
  const ChshFamily family = saturating_family();
  const auto e = family_expectations(family);
  CHECK(e == std::array<double, 4>{1.0, 1.0, 1.0, -1.0});
  for (const auto& [ma, mb] : family_marginals(family)) {
    CHECK(ma == 0.0);
    CHECK(mb == 0.0);
  }
  CHECK(chsh_value(e) == 4.0);
  for (const GridDensity& rho : family.densities()) CHECK(rho.total_mass() == 1.0);
  CHECK(marginal_means(alice_observable(1), bob_observable(1), family.density(3)) ==
        std::pair{0.0, 0.0});
}

TEST_CASE("family rectangles must match the hotels") {
  const GridDensity good = uniform_density(kUnit, kUnit);
  const GridDensity wrong = uniform_density(kUnit, kUnit);
  CHECK(kind_of([&] {
          ChshFamily(good, wrong, uniform_density(kUnit, Interval{1, 2}),
                     uniform_density(Interval{1, 2}, Interval{1, 2}));
        }) == ErrorKind::DomainMismatch);
}

TEST_CASE("optimize_family reproduces the saturating construction") {
  const OptimizeResult r = optimize_family({1, 1, 1, -1}, 4, 4, {.tolerance = 1e-9});
  const std::array<double, 4> expected{1, 1, 1, -1};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(r.achieved[k] - expected[k]) <= 1e-9);
    const auto [ma, mb] = family_marginals(r.family)[k];
    CHECK(std::abs(ma) <= 1e-9);
    CHECK(std::abs(mb) <= 1e-9);
  }
  CHECK(chsh_value(r.achieved) >= 4.0 - 1e-6);

  // same cell masses as the analytic construction
  const ChshFamily reference = saturating_family();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& got = r.family.density(k).values();
    const auto& want = reference.density(k).values();
    for (std::size_t c = 0; c < got.size(); ++c) CHECK(got[c] == doctest::Approx(want[c]).epsilon(1e-9));
  }
}

TEST_CASE("optimize_family with zero targets") {
  const OptimizeResult r = optimize_family({0, 0, 0, 0}, 4, 4);
  for (double a : r.achieved) CHECK(std::abs(a) <= 1e-9);
}

TEST_CASE("optimize_family rejects grids that cut through bands") {
  CHECK(kind_of([] { optimize_family({1, 1, 1, -1}, 3, 3); }) == ErrorKind::GridMisaligned);
  CHECK(kind_of([] { optimize_family({1, 1, 1, -1}, 4, 6); }) == ErrorKind::GridMisaligned);
  CHECK(kind_of([] { optimize_family({1.5, 1, 1, -1}, 4, 4); }) == ErrorKind::InputOutOfRange);
}

TEST_CASE("property: optimizer output is feasible and hits arbitrary targets") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> target(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::array<double, 4> t{target(rng), target(rng), target(rng), target(rng)};
    if (trial == 0) t = {1, -1, 1, -1};
    const std::size_t grid = trial % 3 == 0 ? 8 : 4;
    const OptimizeResult r = optimize_family(t, grid, grid);
    const auto marginals = family_marginals(r.family);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(r.achieved[k] - t[k]) <= 1e-6);
      CHECK(std::abs(marginals[k].first) <= 1e-9);
      CHECK(std::abs(marginals[k].second) <= 1e-9);
      const GridDensity& rho = r.family.density(k);
      CHECK(std::abs(rho.total_mass() - 1.0) <= 1e-12);
      for (double v : rho.values()) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("property: optimizer converges from random starting densities") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PartialRV a = alice_observable(0), b = bob_observable(1);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> w(64);
    for (double& v : w) v = u(rng);
    const GridDensity start(kUnit, Interval{1, 2}, 8, 8, w);
    const double t = trial % 4 == 0 ? (trial % 8 == 0 ? 1.0 : -1.0) : 2 * u(rng) - 1;
    std::size_t iterations = 0;
    const GridDensity rho = optimize_density(a, b, start, t, {.tolerance = 1e-12}, &iterations);
    CHECK(std::abs(expectation(a, b, rho) - t) <= 1e-6);
    const auto [ma, mb] = marginal_means(a, b, rho);
    CHECK(std::abs(ma) <= 1e-9);
    CHECK(std::abs(mb) <= 1e-9);
    CHECK(iterations >= 1);
  }
}

TEST_CASE("optimizer reports non-convergence when the iteration cap is hit") {
  std::vector<double> w(16, 1.0);
  w[0] = 50.0;
  const GridDensity start(kUnit, kUnit, 4, 4, w);
  CHECK(kind_of([&] {
          optimize_density(alice_observable(0), bob_observable(0), start, 0.3,
                           {.tolerance = 1e-15, .max_iterations = 1});
        }) == ErrorKind::NonConvergence);
}

TEST_CASE("classical bound on a common domain") {
  const PartialRV a = alice_observable(0), b = bob_observable(0);
  const double s = classical_bound_check(a, a, b, b, uniform_density(kUnit, kUnit));
  CHECK(s == 0.0);

  CHECK(kind_of([&] {
          classical_bound_check(alice_observable(0), alice_observable(1), b, b,
                                uniform_density(kUnit, kUnit));
        }) == ErrorKind::DomainMismatch);

  // different breakpoints on the same room range are still a common domain
  const std::array<double, 3> bounds{0, 0.5, 1};
  const std::array<double, 2> values{1, -1};
  const PartialRV other = make_step(bounds, values, "x");
  const double mixed = classical_bound_check(a, other, b, b, saturating_family().density(0));
  CHECK(std::abs(mixed) <= 2.0);
}

TEST_CASE("property: randomized common-domain instances respect |S| <= 2") {
  const ClassicalSuiteResult r = run_classical_suite(1000, 100000, 53);
  CHECK(r.instances == 1000);
  CHECK(r.violations == 0);
  CHECK(r.max_abs_s <= 2.0 + 1e-12);
  CHECK(r.points == 100000);
  CHECK(r.pointwise_violations == 0);
  CHECK(r.max_abs_pointwise == 2.0);
}
