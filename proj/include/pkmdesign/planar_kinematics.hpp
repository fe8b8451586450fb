#pragma once

// Two-dof translational PPa mechanism: two orthogonal prismatic rails along
// the coordinate axes, each carrying a parallelogram leg of length L that
// meets the platform at the tool point P.
//
//   a1 = (rho1, 0),  a2 = (0, rho2),  |p - a1| = |p - a2| = L
//
// Parallel Jacobian A stacks the leg vectors (p - a_i)^T, serial Jacobian B
// is diag((p - a_i)^T e_i), and the forward velocity map is J = A^-1 B.

#include <array>
#include <optional>

#include "pkmdesign/numeric_core.hpp"

namespace pkm {

/// Parallel (A) and serial (B) Jacobians at a pose; J = A^-1 B unless A is
/// singular, in which case `J` is empty and `parallel_singular` is set.
template <std::size_t N>
struct JacobianPair {
  Matrix<N> A;
  Matrix<N> B;
  std::optional<Matrix<N>> J;
  bool parallel_singular = false;
};

using JacobianPair2 = JacobianPair<2>;
using JacobianPair3 = JacobianPair<3>;

/// Velocity amplification factors (extreme singular values of J).
struct AmplificationFactors {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

namespace planar {

inline constexpr Vec2 kRail1{1.0, 0.0};
inline constexpr Vec2 kRail2{0.0, 1.0};

/// Radicands in [-kRadicandClamp, 0] are treated as zero.
inline constexpr double kRadicandClamp = 1e-12;

struct PlanarParams {
  double L = 1.0;
  /// Sign of the square root picked by the inverse kinematics of each leg.
  std::array<int, 2> working_mode{-1, -1};
  /// Sign of det(A) selected by the forward kinematics.
  int assembly_mode = +1;

  void validate() const;
};

struct PlanarJointState {
  double rho1 = 0.0;
  double rho2 = 0.0;
};

struct PlanarConfig {
  Vec2 p;
  Vec2 a1;
  Vec2 a2;
  Vec2 u1;  ///< (p - a1) / L
  Vec2 u2;  ///< (p - a2) / L
  double theta1 = 0.0;
  double theta2 = 0.0;
};

struct PlanarMargins {
  double parallel = 0.0;  ///< |det A| / L^2 = |sin(theta1 - theta2)|
  double serial1 = 0.0;   ///< |(p - a1)^T e1| / L
  double serial2 = 0.0;   ///< |(p - a2)^T e2| / L
};

/// Throws Unreachable (leg index set) when |p.y| > L or |p.x| > L.
PlanarJointState ik2(const Vec2& p, const PlanarParams& params);

/// Full configuration (carriage points, leg directions, leg angles) at p.
PlanarConfig configure2(const Vec2& p, const PlanarParams& params);

/// Circle-circle intersection. Throws NoAssembly when the circles do not
/// meet and SingularAssembly when they are coincident or tangent.
Vec2 fk2(const PlanarJointState& joints, const PlanarParams& params);

JacobianPair2 jacobians2(const Vec2& p, const PlanarParams& params);

/// Throws ParallelSingular when J is undefined.
AmplificationFactors amplification2(const Vec2& p, const PlanarParams& params);

PlanarMargins margins2(const Vec2& p, const PlanarParams& params);

}  // namespace planar
}  // namespace pkm
