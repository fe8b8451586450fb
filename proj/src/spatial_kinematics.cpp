#include "pkmdesign/spatial_kinematics.hpp"

#include <cmath>
#include <limits>

namespace pkm::spatial {

namespace {

using planar::PlanarParams;

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

struct Leg3Frame {
  Vec3 w;  // b3 - a3
  Vec3 t;  // p - b3
};

Leg3Frame leg3_frame(const SpatialPose& pose, const ThirdLegParams& params3) {
  const Leg3Solution sol = leg3_ik(pose.xy(), pose.beta, params3);
  const Vec3 p{pose.x, pose.y, 0.0};
  return {sol.config.b3 - sol.config.a3, p - sol.config.b3};
}

}  // namespace

ThirdLegParams ThirdLegParams::centered_on(const Vec2& center, double L1, double L2, int branch) {
  ThirdLegParams p;
  p.L1 = L1;
  p.L2 = L2;
  p.rail3_anchor = Vec2{center.x() - L1, center.y()};
  p.rho3_branch = branch;
  return p;
}

void ThirdLegParams::validate() const {
  if (!(L1 > 0.0) || !(L2 > 0.0) || !std::isfinite(L1) || !std::isfinite(L2)) {
    throw Error(ErrorKind::InvalidArgument, "third-leg lengths L1 and L2 must be positive");
  }
  if (rho3_branch != 1 && rho3_branch != -1) {
    throw Error(ErrorKind::InvalidArgument, "rho3 branch must be +1 or -1");
  }
}

Leg3Solution leg3_ik(const Vec2& p, double beta, const ThirdLegParams& params3) {
  params3.validate();
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const Vec3 tool{params3.L1 * c, 0.0, -params3.L1 * s};
  const Vec3 b3 = Vec3{p.x(), p.y(), 0.0} - tool;

  const double dx = b3.x() - params3.rail3_anchor.x();
  const double dy = b3.y() - params3.rail3_anchor.y();
  const double L2sq = params3.L2 * params3.L2;
  const double radicand = L2sq - dx * dx - dy * dy;
  if (radicand < -planar::kRadicandClamp * L2sq) {
    throw Error(ErrorKind::LegOutOfReach, "leg 3 out of reach: rail distance exceeds L2", 3);
  }
  const double rise = std::sqrt(std::max(radicand, 0.0));

  Leg3Solution sol;
  sol.rho3 = b3.z() + params3.rho3_branch * rise;
  sol.config.b3 = b3;
  sol.config.a3 = Vec3{params3.rail3_anchor.x(), params3.rail3_anchor.y(), sol.rho3};
  sol.config.tool_dir = tool * (1.0 / params3.L1);
  sol.config.leg_dir = (b3 - sol.config.a3) * (1.0 / params3.L2);
  return sol;
}

SpatialJointState full_ik3(const SpatialPose& pose, const PlanarParams& params,
                           const ThirdLegParams& params3) {
  const planar::PlanarJointState q = planar::ik2(pose.xy(), params);
  const Leg3Solution leg = leg3_ik(pose.xy(), pose.beta, params3);
  return {q.rho1, q.rho2, leg.rho3};
}

SpatialPose full_fk3(const SpatialJointState& joints, const PlanarParams& params,
                     const ThirdLegParams& params3, double beta_hint) {
  params3.validate();
  const Vec2 p = planar::fk2({joints.rho1, joints.rho2}, params);
  const double L1 = params3.L1;
  const double u = p.x() - params3.rail3_anchor.x();
  const double v = p.y() - params3.rail3_anchor.y();
  const double r3 = joints.rho3;

  // |b3(beta) - a3|^2 = L2^2 reduces to u cos(beta) + rho3 sin(beta) = k.
  const double k = (u * u + v * v + r3 * r3 + L1 * L1 - params3.L2 * params3.L2) / (2.0 * L1);
  const double radius = std::hypot(u, r3);
  if (radius == 0.0 || std::abs(k) > radius * (1.0 + 1e-12)) {
    throw Error(ErrorKind::LegOutOfReach, "leg 3 cannot close at these joint values", 3);
  }
  const double phase = std::atan2(r3, u);
  const double spread = std::acos(std::clamp(k / radius, -1.0, 1.0));
  if (spread < 1e-9) {
    throw Error(ErrorKind::ParallelSingular, "leg 3 parallel singularity: closure roots coincide", 3);
  }

  double best = std::numeric_limits<double>::quiet_NaN();
  double best_gap = std::numeric_limits<double>::infinity();
  for (double root : {phase + spread, phase - spread}) {
    const double beta = wrap_angle(root);
    const double wz = L1 * std::sin(beta) - r3;  // (b3 - a3).z
    // Carriage above B3 (branch +1) means w.z <= 0.
    if (params3.rho3_branch * wz > 1e-12 * params3.L2) continue;
    const double gap = std::abs(wrap_angle(beta - beta_hint));
    if (gap < best_gap) {
      best_gap = gap;
      best = beta;
    }
  }
  if (std::isnan(best)) {
    throw Error(ErrorKind::NoAssembly, "leg 3 closes only on the opposite carriage branch", 3);
  }
  return {p.x(), p.y(), best};
}

JacobianPair3 jacobians3(const SpatialPose& pose, const PlanarParams& params,
                         const ThirdLegParams& params3) {
  const planar::PlanarConfig cfg = planar::configure2(pose.xy(), params);
  const Leg3Frame f = leg3_frame(pose, params3);
  const Vec2 leg1 = cfg.p - cfg.a1;
  const Vec2 leg2 = cfg.p - cfg.a2;

  JacobianPair3 jp;
  jp.A = Mat3::from_rows({Vec3{leg1.x(), leg1.y(), 0.0}, Vec3{leg2.x(), leg2.y(), 0.0},
                          Vec3{f.w.x(), f.w.y(), -dot(f.w, cross(kRotationAxis, f.t))}});
  jp.B = Mat3::diagonal(Vec3{dot(leg1, planar::kRail1), dot(leg2, planar::kRail2), dot(f.w, kRail3Axis)});
  if (is_singular(jp.A)) {
    jp.parallel_singular = true;
  } else {
    jp.J = invert(jp.A) * jp.B;
  }
  return jp;
}

LegMargins leg3_margins(const SpatialPose& pose, const ThirdLegParams& params3) {
  const Leg3Frame f = leg3_frame(pose, params3);
  const double nw = norm(f.w);
  return {std::abs(dot(f.w, kRail3Axis)) / nw,
          std::abs(dot(f.w, cross(kRotationAxis, f.t))) / (nw * norm(f.t))};
}

LegAngles angles_gamma_sigma(const SpatialPose& pose, const ThirdLegParams& params3) {
  const Leg3Frame f = leg3_frame(pose, params3);
  const Vec3 to_carriage = -f.w;  // a3 - b3
  const double sigma = angle_between(to_carriage, kRail3Axis);
  return {angle_between(to_carriage, f.t), f.w.x() < 0.0 ? -sigma : sigma};
}

}  // namespace pkm::spatial
