#include "pkmdesign/numeric_core.hpp"

#include <functional>

namespace pkm {

double wrap_angle(double rad) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(rad, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

SingularValueSet<2> singular_values(const Mat2& m) {
  const double a = m(0, 0) * m(0, 0) + m(0, 1) * m(0, 1);
  const double d = m(1, 0) * m(1, 0) + m(1, 1) * m(1, 1);
  const double b = m(0, 0) * m(1, 0) + m(0, 1) * m(1, 1);
  const double half_gap = 0.5 * (a - d);
  const double big = 0.5 * (a + d) + std::sqrt(half_gap * half_gap + b * b);
  const double s_max = std::sqrt(std::max(big, 0.0));
  // σmin·σmax = |det m| is better conditioned than the small eigenvalue.
  const double s_min = s_max > 0.0 ? std::abs(determinant(m)) / s_max : 0.0;
  return {s_max, std::min(s_min, s_max)};
}

SingularValueSet<3> singular_values(const Mat3& m) {
  std::array<Vec3, 3> col{m.column(0), m.column(1), m.column(2)};
  constexpr int kMaxSweeps = 60;
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const double alpha = dot(col[p], col[p]);
        const double beta = dot(col[q], col[q]);
        const double gamma = dot(col[p], col[q]);
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Vec3 cp = col[p];
        col[p] = c * cp - s * col[q];
        col[q] = s * cp + c * col[q];
      }
    }
    if (!rotated) break;
  }
  SingularValueSet<3> out{norm(col[0]), norm(col[1]), norm(col[2])};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace pkm
