#include <doctest.h>

#include <random>

#include "pkmdesign/planar_kinematics.hpp"

using namespace pkm;
using namespace pkm::planar;

namespace {

const PlanarParams kUnit{};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

Mat2 fd_of_fk(const Vec2& p, const PlanarParams& params) {
  const PlanarJointState q = ik2(p, params);
  return finite_difference_jacobian(
      [&](const Vec2& r) { return fk2({r.x(), r.y()}, params); }, Vec2{q.rho1, q.rho2});
}

}  // namespace

TEST_CASE("ik2 examples") {
  auto q = ik2({0, 0}, kUnit);
  CHECK(q.rho1 == -1.0);
  CHECK(q.rho2 == -1.0);

  q = ik2({0, 0.5}, kUnit);
  CHECK(q.rho1 == doctest::Approx(-0.866025403784).epsilon(1e-12));
  CHECK(q.rho2 == doctest::Approx(-0.5));

  q = ik2({0, 1}, kUnit);
  CHECK(q.rho1 == 0.0);
  CHECK(q.rho2 == 0.0);

  try {
    ik2({0, 1.2}, kUnit);
    FAIL("expected Unreachable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unreachable);
    CHECK(e.leg() == 1);
  }
  try {
    ik2({-1.01, 0}, kUnit);
    FAIL("expected Unreachable");
  } catch (const Error& e) {
    CHECK(e.leg() == 2);
  }
}

TEST_CASE("ik2 working modes and leg lengths") {
  const PlanarParams params{2.0, {+1, -1}, +1};
  const Vec2 p{0.4, -0.3};
  const auto c = configure2(p, params);
  CHECK(norm(p - c.a1) == doctest::Approx(2.0));
  CHECK(norm(p - c.a2) == doctest::Approx(2.0));
  CHECK(c.a1.x() > p.x());
  CHECK(c.a2.y() < p.y());
  CHECK(norm(c.u1) == doctest::Approx(1.0));
}

TEST_CASE("fk2 examples") {
  Vec2 p = fk2({-1, -1}, kUnit);
  CHECK(std::abs(p.x()) < 1e-12);
  CHECK(std::abs(p.y()) < 1e-12);

  p = fk2({-0.86603, -0.5}, kUnit);
  CHECK(p.x() == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(p.y() == doctest::Approx(0.5).epsilon(1e-4));

  try {
    fk2({0, 0}, kUnit);
    FAIL("expected SingularAssembly");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularAssembly);
    CHECK(std::string(e.what()).find("coincident circles") != std::string::npos);
  }
  CHECK(kind_of([] { fk2({-3, 3}, kUnit); }) == ErrorKind::NoAssembly);
}

TEST_CASE("fk2 assembly modes pick opposite signs of det A") {
  const PlanarJointState q = ik2({0.2, -0.4}, kUnit);
  const Vec2 up = fk2(q, kUnit);
  const Vec2 down = fk2(q, {1.0, {-1, -1}, -1});
  CHECK(determinant(jacobians2(up, kUnit).A) > 0.0);
  CHECK(determinant(jacobians2(down, kUnit).A) < 0.0);
  CHECK(norm(up - Vec2{0.2, -0.4}) < 1e-12);
}

TEST_CASE("jacobians2 examples") {
  auto jp = jacobians2({0, 0}, kUnit);
  CHECK(jp.A == Mat2::identity());
  CHECK(jp.B == Mat2::identity());
  REQUIRE(jp.J);
  CHECK(*jp.J == Mat2::identity());

  jp = jacobians2({0, 0.5}, kUnit);
  CHECK(jp.A(0, 0) == doctest::Approx(0.866025403784));
  CHECK(jp.A(0, 1) == doctest::Approx(0.5));
  CHECK(jp.A(1, 0) == doctest::Approx(0.0));
  CHECK(jp.A(1, 1) == doctest::Approx(1.0));
  CHECK(jp.B(0, 0) == doctest::Approx(0.866025403784));
  CHECK(jp.B(1, 1) == doctest::Approx(1.0));
  REQUIRE(jp.J);
  CHECK((*jp.J)(0, 0) == doctest::Approx(1.0));
  CHECK((*jp.J)(0, 1) == doctest::Approx(-0.577350269190));
  CHECK((*jp.J)(1, 0) == doctest::Approx(0.0));
  CHECK((*jp.J)(1, 1) == doctest::Approx(1.0));
  CHECK(max_abs_entry(*jp.J - fd_of_fk({0, 0.5}, kUnit)) < 1e-8);

  const double h = std::numbers::sqrt2 / 2.0;
  jp = jacobians2({h, h}, kUnit);
  CHECK(jp.parallel_singular);
  CHECK_FALSE(jp.J);
  CHECK(std::abs(determinant(jp.A)) < 1e-9);
}

TEST_CASE("amplification2 examples") {
  auto f = amplification2({0, 0}, kUnit);
  CHECK(f.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.lambda_max == doctest::Approx(1.0).epsilon(1e-12));

  f = amplification2({0, 0.5}, kUnit);
  CHECK(f.lambda_min == doctest::Approx(0.7522).epsilon(1e-4));
  CHECK(f.lambda_max == doctest::Approx(1.3295).epsilon(1e-4));

  CHECK(amplification2({0.7, 0.7}, kUnit).lambda_max > 3.0);
  const double h = std::numbers::sqrt2 / 2.0;
  CHECK(kind_of([&] { amplification2({h, h}, kUnit); }) == ErrorKind::ParallelSingular);
}

TEST_CASE("margins2 examples") {
  auto m = margins2({0, 0}, kUnit);
  CHECK(m.parallel == 1.0);
  CHECK(m.serial1 == 1.0);
  CHECK(m.serial2 == 1.0);

  const double h = std::numbers::sqrt2 / 2.0;
  CHECK(margins2({h, h}, kUnit).parallel < 1e-12);
  m = margins2({0, 1}, kUnit);
  CHECK(m.serial1 == 0.0);
  CHECK(m.serial2 == 1.0);
}

TEST_CASE("parallel singular locus is the unit arc in the positive quadrant") {
  for (double t = 0.05; t < std::numbers::pi / 2; t += 0.05) {
    const Vec2 p{std::cos(t), std::sin(t)};
    CHECK(margins2(p, kUnit).parallel < 1e-9);
    CHECK(margins2(0.9 * p, kUnit).parallel > 1e-3);
    CHECK(margins2(Vec2{-p.x(), p.y()}, kUnit).parallel > 1e-3);
  }
}

TEST_CASE("random poses: round trip, margins and Jacobian oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const double L : {1.0, 0.35, 2.5}) {
    const PlanarParams params{L, {-1, -1}, +1};
    int tested = 0;
    while (tested < 2000) {
      const Vec2 p{L * u(rng), L * u(rng)};
      const auto jp = jacobians2(p, params);
      if (determinant(jp.A) < 1e-3 * L * L) continue;
      ++tested;
      const Vec2 back = fk2(ik2(p, params), params);
      CHECK(norm(back - p) <= 1e-9 * L);

      const auto m = margins2(p, params);
      CHECK(m.parallel >= 0.0);
      CHECK(m.parallel <= 1.0 + 1e-12);
      CHECK(m.serial1 <= 1.0 + 1e-12);
      CHECK(m.serial2 <= 1.0 + 1e-12);

      if (m.parallel < 0.05 || m.serial1 < 0.05 || m.serial2 < 0.05) continue;
      const Mat2 fd = fd_of_fk(p, params);
      CHECK(frobenius_norm(fd - *jp.J) / frobenius_norm(*jp.J) <= 1e-5);
    }
  }
}

TEST_CASE("amplification factors are scale invariant") {
  const PlanarParams big{3.0, {-1, -1}, +1};
  for (const Vec2 p : {Vec2{0.1, 0.2}, Vec2{-0.5, 0.4}, Vec2{0.3, -0.8}}) {
    const auto a = amplification2(p, kUnit);
    const auto b = amplification2(3.0 * p, big);
    CHECK(a.lambda_min == doctest::Approx(b.lambda_min).epsilon(1e-12));
    CHECK(a.lambda_max == doctest::Approx(b.lambda_max).epsilon(1e-12));
  }
}

TEST_CASE("parameter validation") {
  CHECK(kind_of([] { ik2({0, 0}, {0.0, {-1, -1}, +1}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ik2({0, 0}, {1.0, {0, -1}, +1}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { fk2({-1, -1}, {1.0, {-1, -1}, 2}); }) == ErrorKind::InvalidArgument);
}
