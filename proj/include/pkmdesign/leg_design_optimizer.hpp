#pragma once

// Third-leg design sweep: for each (L1, L2) the range of beta reachable from
// the reference orientation beta = 0 at every point of the useful square
// without either leg-3 margin dropping to the threshold.

#include <vector>

#include "pkmdesign/spatial_kinematics.hpp"
#include "pkmdesign/workspace_optimizer.hpp"

namespace pkm::legdesign {

struct BetaSampling {
  double beta_step = deg2rad(0.5);
  int workspace_samples = 17;  ///< per square dimension, corners included

  void validate() const;
};

struct DesignGrid {
  std::vector<double> L1_values;
  std::vector<double> L2_values;
  double margin_threshold = 0.2;
  BetaSampling sampling;

  void validate() const;

  /// lo, lo + step, ... up to hi (inclusive, with a half-step slack).
  static std::vector<double> range(double lo, double hi, double step);
};

/// Closed interval of beta in radians; lo <= 0 <= hi when non-empty.
struct BetaInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
};

/// True when leg 3 closes at (p, beta) and both margins exceed threshold.
bool pose_admissible(const Vec2& p, double beta, const spatial::ThirdLegParams& params3, double threshold);

struct PointInterval {
  bool reference_ok = false;
  BetaInterval interval;
};

/// Largest contiguous interval around beta = 0, resolved to beta_step, over
/// which pose_admissible holds at p. Empty (0, 0) when beta = 0 fails.
/// Search stops at +-180 degrees.
PointInterval beta_interval_at(const Vec2& p, const spatial::ThirdLegParams& params3, double threshold,
                               double beta_step);

/// Intersection of the per-point intervals over a grid of the square, with
/// the rail anchor derived from the square center. Throws CenterInfeasible
/// when beta = 0 already fails at the center.
BetaInterval beta_range(double L1, double L2, const workspace::UsefulSquare& square, double threshold,
                        const BetaSampling& sampling = {});

struct BetaRangeMap {
  DesignGrid grid;
  /// Row-major over (L1 index, L2 index), degrees.
  std::vector<double> ranges_deg;

  double at(std::size_t i1, std::size_t i2) const { return ranges_deg[i1 * grid.L2_values.size() + i2]; }
};

/// Cells whose center is infeasible are recorded as 0.
BetaRangeMap sweep_designs(const DesignGrid& grid, const workspace::UsefulSquare& square);

struct DesignOptimum {
  double L1 = 0.0;
  double L2 = 0.0;
  double ratio = 0.0;
  double range_deg = 0.0;
};

/// Argmax of the map, ties broken by smaller L2 then smaller L1. Throws
/// AllInfeasible when every cell is zero.
DesignOptimum find_optimum(const BetaRangeMap& map);

}  // namespace pkm::legdesign
