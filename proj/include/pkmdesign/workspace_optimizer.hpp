#pragma once

// Square useful-workspace search for the planar mechanism: the largest square
// (axis-aligned or rotated 45 degrees) on whose sides both velocity
// amplification factors stay inside prescribed bounds.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pkmdesign/planar_kinematics.hpp"

namespace pkm::workspace {

struct AmplificationBounds {
  double lambda_lo = 1.0 / 3.0;
  double lambda_hi = 3.0;

  void validate() const;
};

enum class SquareOrientation { axis_aligned, oblique45 };

std::string_view to_string(SquareOrientation o);
std::optional<SquareOrientation> parse_orientation(std::string_view text);

/// Published optimal areas for unit leg length and bounds [1/3, 3].
double reference_area(SquareOrientation o);

struct UsefulSquare {
  Vec2 center{0.0, 0.0};
  double half_side = 0.0;
  SquareOrientation orientation = SquareOrientation::axis_aligned;

  /// Maps local coordinates (u, v) in [-1, 1]^2 to the plane.
  Vec2 point(double u, double v) const;
  /// n points per side, corners included once: 4 (n - 1) points in total.
  std::vector<Vec2> side_samples(int n) const;
  /// n x n grid over the closed square.
  std::vector<Vec2> grid_samples(int n) const;
  double area() const { return 4.0 * half_side * half_side; }
};

struct LambdaExtrema {
  double min = 1.0;
  double max = 1.0;
};

/// Extremes of both amplification factors over the side samples. Throws the
/// Unreachable/ParallelSingular error of the first failing sample, with the
/// sample's coordinates in the message.
LambdaExtrema lambda_extrema_on_square(const UsefulSquare& sq, const planar::PlanarParams& params, int n);

struct FeasibilityReport {
  bool feasible = false;
  std::optional<LambdaExtrema> extrema;
  std::string reason;
  std::optional<Vec2> offending_sample;
};

FeasibilityReport check_square(const UsefulSquare& sq, const AmplificationBounds& bounds,
                               const planar::PlanarParams& params, int n);

bool square_feasible(const UsefulSquare& sq, const AmplificationBounds& bounds,
                     const planar::PlanarParams& params, int n);

/// Same check over an n x n grid of the closed square instead of its sides.
FeasibilityReport check_square_interior(const UsefulSquare& sq, const AmplificationBounds& bounds,
                                        const planar::PlanarParams& params, int n);

/// How candidate squares are placed relative to the isotropic point S = (0, 0).
enum class SquarePlacement {
  /// S lies on the square's boundary; the search runs over S's position
  /// along the perimeter and grows the square away from S.
  isotropic_on_boundary,
  /// Centers on a grid over [-L, L]^2; the square grows about its center.
  free,
};

std::string_view to_string(SquarePlacement p);
std::optional<SquarePlacement> parse_placement(std::string_view text);

struct SquareSearch {
  SquarePlacement placement = SquarePlacement::isotropic_on_boundary;
  /// Grid step as a fraction of L (center grid, or perimeter step in units
  /// of the half side).
  double center_step = 0.02;
  int side_samples = 128;
  /// Bisection tolerance on half_side as a fraction of L.
  double tolerance = 1e-4;

  void validate() const;
};

struct WorkspaceResult {
  UsefulSquare best;
  double area = 0.0;
  LambdaExtrema lambda_extrema;
  int samples_per_side = 0;
  SquarePlacement placement = SquarePlacement::isotropic_on_boundary;
};

/// Throws NoFeasibleSquare when no candidate is feasible even at zero size.
WorkspaceResult optimize_square(SquareOrientation orientation, const AmplificationBounds& bounds,
                                const planar::PlanarParams& params, const SquareSearch& search = {});

struct AmplificationSample {
  Vec2 p;
  std::optional<AmplificationFactors> factors;  ///< empty when unreachable or singular
};

/// Row-major n x n sampling of [-L, L]^2 (y outer, x inner).
std::vector<AmplificationSample> amplification_map(const planar::PlanarParams& params, int n);

}  // namespace pkm::workspace
