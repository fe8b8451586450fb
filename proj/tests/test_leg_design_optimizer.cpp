#include <doctest.h>

#include <algorithm>

#include "pkmdesign/leg_design_optimizer.hpp"

using namespace pkm;
using namespace pkm::legdesign;
using workspace::SquareOrientation;
using workspace::UsefulSquare;

namespace {

constexpr double kThreshold = 0.2;
const UsefulSquare kPoint{{0, 0}, 0.0, SquareOrientation::oblique45};

/// Closed-form leg-3 margins at the square center, where the anchor sits one
/// tool length behind the tool point: d = L1 (1 - cos b).
struct MarginOracle {
  double L1;
  double L2;

  bool admissible(double beta, double threshold) const {
    const double d = L1 * (1.0 - std::cos(beta));
    if (d > L2) return false;
    const double h = std::sqrt(L2 * L2 - d * d);
    const double serial = h / L2;
    const double parallel = std::abs(-d * std::sin(beta) + h * std::cos(beta)) / L2;
    return serial > threshold && parallel > threshold;
  }

  BetaInterval interval_deg(double threshold, double step_deg) const {
    BetaInterval iv;
    while (iv.hi + step_deg < 180.0 && admissible(deg2rad(iv.hi + step_deg), threshold)) iv.hi += step_deg;
    while (iv.lo - step_deg > -180.0 && admissible(deg2rad(iv.lo - step_deg), threshold)) iv.lo -= step_deg;
    return iv;
  }
};

BetaInterval in_degrees(const BetaInterval& iv) { return {rad2deg(iv.lo), rad2deg(iv.hi)}; }

}  // namespace

TEST_CASE("design grid ranges") {
  const auto l2 = DesignGrid::range(0.5, 2.7, 0.1);
  CHECK(l2.size() == 23);
  CHECK(l2.back() == 2.7);
  CHECK(l2[3] == 0.8);
  CHECK(DesignGrid::range(1.0, 1.0, 0.1).size() == 1);
  CHECK_THROWS_AS(DesignGrid::range(1.0, 0.5, 0.1), Error);
  CHECK_THROWS_AS(DesignGrid::range(0.5, 1.0, 0.0), Error);

  DesignGrid grid;
  CHECK_THROWS_AS(grid.validate(), Error);
  grid.L1_values = {1.0};
  grid.L2_values = {1.8};
  grid.validate();
  grid.margin_threshold = 1.0;
  CHECK_THROWS_AS(grid.validate(), Error);
}

TEST_CASE("closed-form oracle at the reference design") {
  const MarginOracle oracle{1.0, 1.8};
  const BetaInterval iv = oracle.interval_deg(kThreshold, 0.01);
  CHECK(iv.lo == doctest::Approx(-139.78).epsilon(1e-4));
  CHECK(iv.hi == doctest::Approx(61.55).epsilon(1e-4));
}

TEST_CASE("single-point beta range matches the oracle") {
  const BetaInterval iv = in_degrees(beta_range(1.0, 1.8, kPoint, kThreshold));
  CHECK(iv.lo == doctest::Approx(-139.5).epsilon(1e-9));
  CHECK(iv.hi == doctest::Approx(61.5).epsilon(1e-9));
  CHECK(std::abs(iv.lo - -139.78) <= 0.5);
  CHECK(std::abs(iv.hi - 61.55) <= 0.5);
  CHECK(iv.width() == doctest::Approx(201.0));
}

TEST_CASE("oracle agreement over a range of designs") {
  for (double L1 : {0.6, 1.0, 1.4}) {
    for (double L2 : {0.9, 1.5, 2.2, 2.7}) {
      const MarginOracle oracle{L1, L2};
      BetaSampling sampling;
      sampling.beta_step = deg2rad(0.25);
      const BetaInterval iv = in_degrees(beta_range(L1, L2, kPoint, kThreshold, sampling));
      const BetaInterval expected = oracle.interval_deg(kThreshold, 0.25);
      CHECK(iv.lo == doctest::Approx(expected.lo).epsilon(1e-9));
      CHECK(iv.hi == doctest::Approx(expected.hi).epsilon(1e-9));
    }
  }
}

TEST_CASE("beta_interval_at") {
  const auto p3 = spatial::ThirdLegParams::centered_on({0, 0}, 1.0, 1.8);
  const auto at = beta_interval_at({0, 0}, p3, kThreshold, deg2rad(0.5));
  CHECK(at.reference_ok);
  CHECK(rad2deg(at.interval.hi) == doctest::Approx(61.5));
  const auto out = beta_interval_at({3.0, 0}, p3, kThreshold, deg2rad(0.5));
  CHECK_FALSE(out.reference_ok);
  CHECK(out.interval.width() == 0.0);
  CHECK_FALSE(pose_admissible({0, 0}, std::acos(1.0 / 2.8), p3, kThreshold));
}

TEST_CASE("short legs give an empty range") {
  const UsefulSquare square{{0, 0}, 0.5, SquareOrientation::axis_aligned};
  CHECK(beta_range(1.0, 0.3, square, kThreshold).width() == 0.0);
}

TEST_CASE("threshold close to one collapses the range") {
  const double w = rad2deg(beta_range(1.0, 1.8, kPoint, 0.9999).width());
  CHECK(w < 2.0);
  double previous = 1e9;
  for (double t : {0.05, 0.1, 0.2, 0.4, 0.6, 0.8}) {
    const double width = beta_range(1.0, 1.8, kPoint, t).width();
    CHECK(width <= previous);
    previous = width;
  }
}

TEST_CASE("shrinking the square never shrinks the range") {
  const UsefulSquare big{{-0.3, 0.3}, 0.44, SquareOrientation::oblique45};
  double previous = 0.0;
  for (double h : {0.44, 0.3, 0.15, 0.0}) {
    const UsefulSquare sq{big.center, h, big.orientation};
    const double width = beta_range(1.2, 2.1, sq, kThreshold).width();
    CHECK(width >= previous);
    previous = width;
  }
}

TEST_CASE("range depends only on the square's shape, not its position") {
  const UsefulSquare a{{0, 0}, 0.3, SquareOrientation::axis_aligned};
  const UsefulSquare b{{-0.4, 0.25}, 0.3, SquareOrientation::axis_aligned};
  const auto ra = beta_range(1.1, 2.0, a, kThreshold);
  const auto rb = beta_range(1.1, 2.0, b, kThreshold);
  CHECK(ra.lo == doctest::Approx(rb.lo));
  CHECK(ra.hi == doctest::Approx(rb.hi));
}

TEST_CASE("scale invariance") {
  const UsefulSquare sq{{0.1, -0.2}, 0.3, SquareOrientation::oblique45};
  const UsefulSquare big{{0.25, -0.5}, 0.75, SquareOrientation::oblique45};
  const auto r1 = beta_range(1.0, 1.8, sq, kThreshold);
  const auto r2 = beta_range(2.5, 4.5, big, kThreshold);
  CHECK(r1.lo == doctest::Approx(r2.lo));
  CHECK(r1.hi == doctest::Approx(r2.hi));
}

TEST_CASE("refining the beta step moves endpoints by less than the coarse step") {
  const UsefulSquare sq{{0, 0}, 0.3, SquareOrientation::oblique45};
  BetaSampling coarse;
  BetaSampling fine;
  fine.beta_step = coarse.beta_step / 10.0;
  const auto c = beta_range(1.3, 2.4, sq, kThreshold, coarse);
  const auto f = beta_range(1.3, 2.4, sq, kThreshold, fine);
  CHECK(f.hi >= c.hi);
  CHECK(f.lo <= c.lo);
  CHECK(f.hi - c.hi < coarse.beta_step);
  CHECK(c.lo - f.lo < coarse.beta_step);
}

TEST_CASE("sweep and optimum") {
  DesignGrid one;
  one.L1_values = {1.0};
  one.L2_values = {1.8};
  const auto single = sweep_designs(one, kPoint);
  REQUIRE(single.ranges_deg.size() == 1);
  CHECK(single.at(0, 0) == doctest::Approx(201.0));
  const auto best = find_optimum(single);
  CHECK(best.L1 == 1.0);
  CHECK(best.L2 == 1.8);
  CHECK(best.ratio == doctest::Approx(1.8));

  DesignGrid grid;
  grid.L1_values = DesignGrid::range(0.5, 1.5, 0.5);
  grid.L2_values = DesignGrid::range(0.5, 2.5, 1.0);
  const UsefulSquare sq{{0, 0}, 0.3, SquareOrientation::oblique45};
  const auto map = sweep_designs(grid, sq);
  CHECK(map.ranges_deg.size() == 9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(map.at(i, j) >= 0.0);
      CHECK(map.at(i, j) <= 360.0);
      CHECK(map.at(i, j) ==
            doctest::Approx(rad2deg(beta_range(grid.L1_values[i], grid.L2_values[j], sq, kThreshold).width())));
    }
  }
  const auto opt = find_optimum(map);
  CHECK(opt.range_deg == *std::max_element(map.ranges_deg.begin(), map.ranges_deg.end()));
}

TEST_CASE("find_optimum ties and failures") {
  BetaRangeMap map;
  map.grid.L1_values = {1.0, 2.0};
  map.grid.L2_values = {1.0, 2.0};
  map.ranges_deg = {10.0, 30.0, 30.0, 5.0};
  const auto best = find_optimum(map);
  CHECK(best.L1 == 2.0);
  CHECK(best.L2 == 1.0);

  map.ranges_deg = {0.0, 0.0, 0.0, 0.0};
  try {
    find_optimum(map);
    FAIL("expected AllInfeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AllInfeasible);
  }
}
