#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "pkmdesign/numeric_core.hpp"

using namespace pkm;

namespace {

template <std::size_t N>
Eigen::Matrix<double, int(N), int(N)> to_eigen(const Matrix<N>& m) {
  Eigen::Matrix<double, int(N), int(N)> e;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) e(int(r), int(c)) = m(r, c);
  return e;
}

template <std::size_t N>
Matrix<N> random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix<N> m;
  for (double& v : m.a) v = u(rng);
  return m;
}

}  // namespace

TEST_CASE("angle helpers") {
  CHECK(deg2rad(180.0) == doctest::Approx(std::numbers::pi));
  CHECK(rad2deg(std::numbers::pi / 2) == doctest::Approx(90.0));
  CHECK(wrap_angle(3 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5));
}

TEST_CASE("vector algebra") {
  const Vec3 i{1, 0, 0};
  const Vec3 j{0, 1, 0};
  CHECK(cross(i, j) == Vec3{0, 0, 1});
  CHECK(cross(Vec2{1, 0}, Vec2{0, 1}) == 1.0);
  CHECK(norm(Vec2{3, 4}) == 5.0);
  CHECK(dot(Vec3{1, 2, 3}, Vec3{4, 5, 6}) == 32.0);
}

TEST_CASE("determinant") {
  CHECK(determinant(Mat2::identity()) == 1.0);
  CHECK(determinant(Mat2::from_rows({Vec2{0.8660, 0.5}, Vec2{0, 1}})) == doctest::Approx(0.8660).epsilon(1e-12));
  CHECK(determinant(Mat2::from_rows({Vec2{0.3, -1.2}, Vec2{0.3, -1.2}})) == 0.0);
  CHECK(determinant(Mat3::from_rows({Vec3{1, 2, 3}, Vec3{4, 5, 6}, Vec3{1, 2, 3}})) == 0.0);
  CHECK(is_singular(Mat2::from_rows({Vec2{1, 2}, Vec2{2, 4}})));
  CHECK_FALSE(is_singular(Mat2::identity()));
}

TEST_CASE("invert") {
  CHECK(invert(Mat2::identity()) == Mat2::identity());
  const Mat2 d = invert(Mat2::diagonal({2.0, 4.0}));
  CHECK(d(0, 0) == 0.5);
  CHECK(d(1, 1) == 0.25);
  CHECK(d(0, 1) == 0.0);

  const Mat2 m = Mat2::from_rows({Vec2{0.8660, 0.5}, Vec2{0, 1}});
  const Mat2 inv = invert(m);
  CHECK(inv(0, 0) == doctest::Approx(1.1547).epsilon(1e-4));
  CHECK(inv(0, 1) == doctest::Approx(-0.5774).epsilon(1e-4));
  CHECK(inv(1, 0) == doctest::Approx(0.0));
  CHECK(inv(1, 1) == doctest::Approx(1.0));
  CHECK(max_abs_entry(m * inv - Mat2::identity()) < 1e-14);

  try {
    invert(Mat2::from_rows({Vec2{1, 2}, Vec2{2, 4}}));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
}

TEST_CASE("singular values, examples") {
  auto sv = singular_values(Mat2::identity());
  CHECK(sv[0] == doctest::Approx(1.0));
  CHECK(sv[1] == doctest::Approx(1.0));

  sv = singular_values(Mat2::from_rows({Vec2{1, -0.57735}, Vec2{0, 1}}));
  CHECK(sv[0] == doctest::Approx(1.3295).epsilon(1e-4));
  CHECK(sv[1] == doctest::Approx(0.7522).epsilon(1e-4));
  CHECK(sv[0] * sv[1] == doctest::Approx(1.0));

  sv = singular_values(Mat2::diagonal({3.0, 1.0 / 3.0}));
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(1.0 / 3.0));

  const auto s3 = singular_values(Mat3::diagonal({0.5, -4.0, 2.0}));
  CHECK(s3[0] == doctest::Approx(4.0));
  CHECK(s3[1] == doctest::Approx(2.0));
  CHECK(s3[2] == doctest::Approx(0.5));
}

TEST_CASE("singular values agree with an Eigen SVD") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 2000; ++k) {
    const Mat2 m2 = random_matrix<2>(rng);
    const Eigen::Vector2d e2 = Eigen::JacobiSVD<Eigen::Matrix2d>(to_eigen(m2)).singularValues();
    const auto s2 = singular_values(m2);
    CHECK(s2[0] == doctest::Approx(e2[0]).epsilon(1e-10));
    CHECK(std::abs(s2[1] - e2[1]) <= 1e-10 * e2[0]);

    const Mat3 m3 = random_matrix<3>(rng);
    const Eigen::Vector3d e3 = Eigen::JacobiSVD<Eigen::Matrix3d>(to_eigen(m3)).singularValues();
    const auto s3 = singular_values(m3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s3[i] - e3[i]) <= 1e-10 * e3[0]);
  }
}

TEST_CASE("singular values: invariants") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    const Mat3 m = random_matrix<3>(rng);
    const auto s = singular_values(m);
    CHECK(s[0] >= s[1]);
    CHECK(s[1] >= s[2]);
    CHECK(s[2] >= 0.0);
    CHECK(s[0] * s[1] * s[2] == doctest::Approx(std::abs(determinant(m))).epsilon(1e-9));
    CHECK(std::hypot(s[0], s[1], s[2]) == doctest::Approx(frobenius_norm(m)).epsilon(1e-12));
    const auto st = singular_values(m.transpose());
    for (int i = 0; i < 3; ++i) CHECK(st[i] == doctest::Approx(s[i]).epsilon(1e-10));
  }
}

TEST_CASE("finite difference Jacobian") {
  const Vec2 x{1.0, 1.0};
  const Mat2 id = finite_difference_jacobian([](const Vec2& v) { return v; }, Vec2{0.3, -2.0});
  CHECK(max_abs_entry(id - Mat2::identity()) < 1e-9);

  const Mat2 j = finite_difference_jacobian([](const Vec2& v) { return Vec2{v.x() * v.x(), v.y()}; }, x);
  CHECK(j(0, 0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(j(0, 1)) < 1e-9);
  CHECK(std::abs(j(1, 0)) < 1e-9);
  CHECK(j(1, 1) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(finite_difference_jacobian([](const Vec2& v) { return v; }, x, 0.0), Error);
}
