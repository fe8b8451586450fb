#include "pkmdesign/planar_kinematics.hpp"

#include <cmath>
#include <string>

namespace pkm::planar {

namespace {

bool is_sign(int s) { return s == 1 || s == -1; }

double clamped_root(double radicand, double scale, int leg) {
  if (radicand < -kRadicandClamp * scale) {
    throw Error(ErrorKind::Unreachable, "pose out of reach of leg " + std::to_string(leg), leg);
  }
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

void PlanarParams::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidArgument, "leg length L must be positive");
  if (!is_sign(working_mode[0]) || !is_sign(working_mode[1]) || !is_sign(assembly_mode)) {
    throw Error(ErrorKind::InvalidArgument, "working and assembly modes must be +1 or -1");
  }
}

PlanarJointState ik2(const Vec2& p, const PlanarParams& params) {
  params.validate();
  const double L2 = params.L * params.L;
  // Each leg's circle must reach its own rail: leg 1 needs |y| <= L, leg 2 |x| <= L.
  const double r1 = clamped_root(L2 - p.y() * p.y(), L2, 1);
  const double r2 = clamped_root(L2 - p.x() * p.x(), L2, 2);
  return {p.x() + params.working_mode[0] * r1, p.y() + params.working_mode[1] * r2};
}

PlanarConfig configure2(const Vec2& p, const PlanarParams& params) {
  const PlanarJointState q = ik2(p, params);
  PlanarConfig cfg;
  cfg.p = p;
  cfg.a1 = Vec2{q.rho1, 0.0};
  cfg.a2 = Vec2{0.0, q.rho2};
  cfg.u1 = (p - cfg.a1) * (1.0 / params.L);
  cfg.u2 = (p - cfg.a2) * (1.0 / params.L);
  cfg.theta1 = std::atan2(cfg.u1.y(), cfg.u1.x());
  cfg.theta2 = std::atan2(cfg.u2.y(), cfg.u2.x());
  return cfg;
}

Vec2 fk2(const PlanarJointState& joints, const PlanarParams& params) {
  params.validate();
  const double L = params.L;
  const Vec2 a1{joints.rho1, 0.0};
  const Vec2 a2{0.0, joints.rho2};
  const Vec2 gap = a2 - a1;
  const double d = norm(gap);
  if (d <= 1e-12 * L) {
    throw Error(ErrorKind::SingularAssembly, "parallel singularity: coincident circles");
  }
  const double radicand = L * L - 0.25 * d * d;
  if (radicand < -kRadicandClamp * L * L) {
    throw Error(ErrorKind::NoAssembly, "no assembly: leg circles do not intersect");
  }
  if (radicand <= kRadicandClamp * L * L) {
    throw Error(ErrorKind::SingularAssembly, "parallel singularity: tangent circles");
  }
  const double h = std::sqrt(radicand);
  const Vec2 mid = 0.5 * (a1 + a2);
  const Vec2 normal{-gap.y() / d, gap.x() / d};
  for (double side : {1.0, -1.0}) {
    const Vec2 p = mid + side * h * normal;
    const double det_a = cross(p - a1, p - a2);
    if ((det_a > 0.0) == (params.assembly_mode > 0)) return p;
  }
  throw Error(ErrorKind::SingularAssembly, "parallel singularity: no assembly branch with the requested det(A) sign");
}

JacobianPair2 jacobians2(const Vec2& p, const PlanarParams& params) {
  const PlanarConfig cfg = configure2(p, params);
  const Vec2 leg1 = p - cfg.a1;
  const Vec2 leg2 = p - cfg.a2;
  JacobianPair2 jp;
  jp.A = Mat2::from_rows({leg1, leg2});
  jp.B = Mat2::diagonal(Vec2{dot(leg1, kRail1), dot(leg2, kRail2)});
  if (is_singular(jp.A)) {
    jp.parallel_singular = true;
  } else {
    jp.J = invert(jp.A) * jp.B;
  }
  return jp;
}

AmplificationFactors amplification2(const Vec2& p, const PlanarParams& params) {
  const JacobianPair2 jp = jacobians2(p, params);
  if (!jp.J) throw Error(ErrorKind::ParallelSingular, "parallel singularity: J undefined");
  const auto sv = singular_values(*jp.J);
  return {sv[1], sv[0]};
}

PlanarMargins margins2(const Vec2& p, const PlanarParams& params) {
  const PlanarConfig cfg = configure2(p, params);
  const double L = params.L;
  const Vec2 leg1 = p - cfg.a1;
  const Vec2 leg2 = p - cfg.a2;
  return {std::abs(cross(leg1, leg2)) / (L * L), std::abs(dot(leg1, kRail1)) / L,
          std::abs(dot(leg2, kRail2)) / L};
}

}  // namespace pkm::planar
