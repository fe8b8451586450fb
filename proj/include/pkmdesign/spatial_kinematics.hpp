#pragma once

// Three-dof extension: the planar platform carries a revolute joint about j
// holding the tool segment B3P, and a PUU leg of length L2 links B3 to a
// carriage A3 sliding on a vertical rail (axis e3) anchored at rail3_anchor.
//
// Conventions (all angles in radians):
//   p       = (x, y, 0)
//   p - b3  = L1 (cos beta, 0, -sin beta)      rotation by beta about +j
//   a3      = (anchor.x, anchor.y, rho3)
//   rho3    = b3.z + branch * sqrt(L2^2 - d^2), d = |b3.xy - anchor|
//
// With w = b3 - a3 and t = p - b3 the third row of the parallel Jacobian is
// [w.x, w.y, -w^T (j x t)] and the third serial entry is w^T e3; task rates
// are ordered (xdot, ydot, betadot).

#include "pkmdesign/planar_kinematics.hpp"

namespace pkm::spatial {

inline constexpr Vec3 kRail3Axis{0.0, 0.0, 1.0};     ///< e3
inline constexpr Vec3 kRotationAxis{0.0, 1.0, 0.0};  ///< j

struct ThirdLegParams {
  double L1 = 1.0;  ///< |B3 P|
  double L2 = 1.8;  ///< |A3 B3|
  Vec2 rail3_anchor{-1.0, 0.0};
  /// +1 puts the carriage above B3 (leg hanging down), -1 below.
  int rho3_branch = +1;

  /// Anchor placed at (center.x - L1, center.y): at the square center with
  /// beta = 0 the leg is parallel to e3 and orthogonal to the tool segment.
  static ThirdLegParams centered_on(const Vec2& center, double L1, double L2, int branch = +1);

  void validate() const;
};

struct SpatialPose {
  double x = 0.0;
  double y = 0.0;
  double beta = 0.0;  ///< rad, wrapped to (-pi, pi]

  Vec2 xy() const { return {x, y}; }
};

struct SpatialJointState {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
};

struct Leg3Config {
  Vec3 a3;
  Vec3 b3;
  Vec3 tool_dir;  ///< (p - b3) / L1
  Vec3 leg_dir;   ///< (b3 - a3) / L2
};

struct Leg3Solution {
  Leg3Config config;
  double rho3 = 0.0;
};

struct LegMargins {
  double serial = 0.0;    ///< |w^T e3| / |w|
  double parallel = 0.0;  ///< |w^T (j x t)| / (|w| |t|)
};

struct LegAngles {
  double gamma = 0.0;  ///< angle A3 B3 P in [0, pi]
  double sigma = 0.0;  ///< angle between (a3 - b3) and e3, signed by the x component of w
};

/// Throws LegOutOfReach (leg 3) when d > L2.
Leg3Solution leg3_ik(const Vec2& p, double beta, const ThirdLegParams& params3);

/// Throws Unreachable (leg 1 or 2) or LegOutOfReach (leg 3).
SpatialJointState full_ik3(const SpatialPose& pose, const planar::PlanarParams& params,
                           const ThirdLegParams& params3);

/// Forward kinematics: (x, y) from the planar legs, beta from the leg-3
/// closure. Of the two closure roots on the requested carriage branch the one
/// nearest `beta_hint` is returned. Throws NoAssembly/SingularAssembly from
/// the planar part, LegOutOfReach when leg 3 cannot close and
/// ParallelSingular when the two leg-3 roots coincide.
SpatialPose full_fk3(const SpatialJointState& joints, const planar::PlanarParams& params,
                     const ThirdLegParams& params3, double beta_hint = 0.0);

JacobianPair3 jacobians3(const SpatialPose& pose, const planar::PlanarParams& params,
                         const ThirdLegParams& params3);

LegMargins leg3_margins(const SpatialPose& pose, const ThirdLegParams& params3);

LegAngles angles_gamma_sigma(const SpatialPose& pose, const ThirdLegParams& params3);

}  // namespace pkm::spatial
