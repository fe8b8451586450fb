#pragma once

// Fixed-size 2D/3D vectors and matrices used by the kinematic models, plus
// the finite-difference oracle every analytic Jacobian is checked against.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>

#include "pkmdesign/error.hpp"

namespace pkm {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kDegToRad; }
constexpr double rad2deg(double rad) { return rad * kRadToDeg; }

/// Wraps an angle to (-pi, pi].
double wrap_angle(double rad);

template <std::size_t N>
struct Vector {
  static_assert(N == 2 || N == 3, "only 2D and 3D vectors are supported");

  std::array<double, N> c{};

  constexpr Vector() = default;

  template <typename... T>
    requires(sizeof...(T) == N && (std::convertible_to<T, double> && ...))
  constexpr Vector(T... xs) : c{static_cast<double>(xs)...} {}

  constexpr double operator[](std::size_t i) const { return c[i]; }
  constexpr double& operator[](std::size_t i) { return c[i]; }

  constexpr double x() const { return c[0]; }
  constexpr double y() const { return c[1]; }
  constexpr double z() const
    requires(N == 3)
  {
    return c[2];
  }

  static constexpr std::size_t size() { return N; }

  constexpr Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vector& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend constexpr Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend constexpr Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend constexpr Vector operator*(Vector a, double s) { return a *= s; }
  friend constexpr Vector operator*(double s, Vector a) { return a *= s; }
  friend constexpr Vector operator-(Vector a) { return a *= -1.0; }
  friend constexpr bool operator==(const Vector&, const Vector&) = default;
};

using Vec2 = Vector<2>;
using Vec3 = Vector<3>;

template <std::size_t N>
constexpr double dot(const Vector<N>& a, const Vector<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vector<N>& a) {
  return std::sqrt(dot(a, a));
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
          a.x() * b.y() - a.y() * b.x()};
}

/// 2D cross product (z component of the 3D cross product).
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Square matrix of dimension 2 or 3, row-major.
template <std::size_t N>
struct Matrix {
  static_assert(N == 2 || N == 3, "only 2x2 and 3x3 matrices are supported");

  std::array<double, N * N> a{};

  static constexpr std::size_t dim() { return N; }

  constexpr double operator()(std::size_t r, std::size_t col) const { return a[r * N + col]; }
  constexpr double& operator()(std::size_t r, std::size_t col) { return a[r * N + col]; }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const Vector<N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  static constexpr Matrix from_rows(const std::array<Vector<N>, N>& rows) {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t col = 0; col < N; ++col) m(r, col) = rows[r][col];
    return m;
  }

  constexpr Vector<N> row(std::size_t r) const {
    Vector<N> v;
    for (std::size_t col = 0; col < N; ++col) v[col] = (*this)(r, col);
    return v;
  }

  constexpr Vector<N> column(std::size_t col) const {
    Vector<N> v;
    for (std::size_t r = 0; r < N; ++r) v[r] = (*this)(r, col);
    return v;
  }

  constexpr Matrix transpose() const {
    Matrix t;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t col = 0; col < N; ++col) t(col, r) = (*this)(r, col);
    return t;
  }

  bool is_finite() const {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
  }

  friend constexpr Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t col = 0; col < N; ++col) {
        double s = 0.0;
        for (std::size_t k = 0; k < N; ++k) s += x(r, k) * y(k, col);
        m(r, col) = s;
      }
    return m;
  }

  friend constexpr Vector<N> operator*(const Matrix& x, const Vector<N>& v) {
    Vector<N> out;
    for (std::size_t r = 0; r < N; ++r) out[r] = dot(x.row(r), v);
    return out;
  }

  friend constexpr Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
    return x;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;
};

using Mat2 = Matrix<2>;
using Mat3 = Matrix<3>;

template <std::size_t N>
double frobenius_norm(const Matrix<N>& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs_entry(const Matrix<N>& m) {
  double s = 0.0;
  for (double v : m.a) s = std::max(s, std::abs(v));
  return s;
}

/// Cofactor-expansion determinant.
template <std::size_t N>
constexpr double determinant(const Matrix<N>& m) {
  if constexpr (N == 2) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  } else {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
}

/// Scale-aware singularity threshold: 1e-12 * (max row norm)^N.
template <std::size_t N>
double singular_tolerance(const Matrix<N>& m) {
  double max_row = 0.0;
  for (std::size_t r = 0; r < N; ++r) max_row = std::max(max_row, norm(m.row(r)));
  return 1e-12 * std::pow(max_row, static_cast<double>(N));
}

template <std::size_t N>
bool is_singular(const Matrix<N>& m) {
  return std::abs(determinant(m)) <= singular_tolerance(m);
}

/// Inverse by the adjugate. Throws SingularMatrix when |det| is at or below
/// singular_tolerance(m).
template <std::size_t N>
Matrix<N> invert(const Matrix<N>& m) {
  const double det = determinant(m);
  if (!(std::abs(det) > singular_tolerance(m))) {
    throw Error(ErrorKind::SingularMatrix, "matrix is singular (|det| below tolerance)");
  }
  Matrix<N> inv;
  if constexpr (N == 2) {
    inv(0, 0) = m(1, 1);
    inv(0, 1) = -m(0, 1);
    inv(1, 0) = -m(1, 0);
    inv(1, 1) = m(0, 0);
  } else {
    inv(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    inv(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    inv(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    inv(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    inv(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    inv(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    inv(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    inv(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    inv(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  }
  for (double& v : inv.a) v /= det;
  return inv;
}

/// Singular values sorted descending; all >= 0.
template <std::size_t N>
using SingularValueSet = std::array<double, N>;

/// Closed form from the trace and determinant of m·mᵀ.
SingularValueSet<2> singular_values(const Mat2& m);

/// One-sided Jacobi orthogonalization, converged to 1e-12.
SingularValueSet<3> singular_values(const Mat3& m);

/// Central-difference Jacobian of f at x, built column by column.
template <std::size_t N, typename F>
  requires std::invocable<F&, const Vector<N>&>
Matrix<N> finite_difference_jacobian(F&& f, const Vector<N>& x, double h = 1e-6) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite difference step must be positive");
  Matrix<N> jac;
  for (std::size_t k = 0; k < N; ++k) {
    Vector<N> plus = x;
    Vector<N> minus = x;
    plus[k] += h;
    minus[k] -= h;
    const Vector<N> fp = f(plus);
    const Vector<N> fm = f(minus);
    for (std::size_t r = 0; r < N; ++r) jac(r, k) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

}  // namespace pkm
