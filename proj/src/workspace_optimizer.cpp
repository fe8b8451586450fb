#include "pkmdesign/workspace_optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

#include "pkmdesign/parallel.hpp"

namespace pkm::workspace {

namespace {

using planar::PlanarParams;

std::string describe(const Vec2& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p.x(), p.y());
  return buf;
}

FeasibilityReport check_points(const std::vector<Vec2>& pts, const AmplificationBounds& bounds,
                               const PlanarParams& params) {
  FeasibilityReport report;
  LambdaExtrema ext{std::numeric_limits<double>::infinity(), 0.0};
  for (const Vec2& p : pts) {
    try {
      const AmplificationFactors f = planar::amplification2(p, params);
      ext.min = std::min(ext.min, f.lambda_min);
      ext.max = std::max(ext.max, f.lambda_max);
      if (f.lambda_min < bounds.lambda_lo || f.lambda_max > bounds.lambda_hi) {
        report.reason = "amplification factors out of bounds at " + describe(p);
        report.offending_sample = p;
        return report;
      }
    } catch (const Error& e) {
      report.reason = std::string(to_string(e.kind())) + " at " + describe(p);
      report.offending_sample = p;
      return report;
    }
  }
  report.feasible = true;
  report.extrema = ext;
  return report;
}

struct Candidate {
  UsefulSquare square;
  bool feasible = false;
};

/// Largest feasible half side of the family  anchor + h * (R(u, v) - R(origin))
/// for h in [0, h_max], assuming feasibility is monotone in h.
Candidate grow(const Vec2& anchor, const Vec2& local_origin, SquareOrientation orientation,
               const AmplificationBounds& bounds, const PlanarParams& params, const SquareSearch& search) {
  auto square_at = [&](double h) {
    UsefulSquare sq{Vec2{0.0, 0.0}, h, orientation};
    sq.center = anchor - sq.point(local_origin.x(), local_origin.y());
    return sq;
  };
  auto feasible = [&](double h) {
    return check_points(square_at(h).side_samples(search.side_samples), bounds, params).feasible;
  };

  Candidate cand;
  if (!feasible(0.0)) return cand;
  cand.feasible = true;
  double lo = 0.0;
  double hi = 2.0 * params.L;
  const double tol = search.tolerance * params.L;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  cand.square = square_at(lo);
  return cand;
}

bool better(const UsefulSquare& a, const UsefulSquare& b) {
  if (a.half_side != b.half_side) return a.half_side > b.half_side;
  return std::pair(a.center[0], a.center[1]) < std::pair(b.center[0], b.center[1]);
}

}  // namespace

void AmplificationBounds::validate() const {
  if (!(lambda_lo > 0.0) || !(lambda_lo <= 1.0) || !(lambda_hi >= 1.0) || !std::isfinite(lambda_hi)) {
    throw Error(ErrorKind::InvalidArgument, "amplification bounds must satisfy 0 < lo <= 1 <= hi");
  }
}

std::string_view to_string(SquareOrientation o) {
  return o == SquareOrientation::axis_aligned ? "axis_aligned" : "oblique45";
}

std::optional<SquareOrientation> parse_orientation(std::string_view text) {
  if (text == "axis_aligned") return SquareOrientation::axis_aligned;
  if (text == "oblique45") return SquareOrientation::oblique45;
  return std::nullopt;
}

double reference_area(SquareOrientation o) { return o == SquareOrientation::axis_aligned ? 0.89 : 0.62; }

std::string_view to_string(SquarePlacement p) {
  return p == SquarePlacement::free ? "free" : "isotropic_on_boundary";
}

std::optional<SquarePlacement> parse_placement(std::string_view text) {
  if (text == "free") return SquarePlacement::free;
  if (text == "isotropic_on_boundary") return SquarePlacement::isotropic_on_boundary;
  return std::nullopt;
}

void SquareSearch::validate() const {
  if (!(center_step > 0.0) || center_step > 0.02) {
    throw Error(ErrorKind::InvalidArgument, "center step must be in (0, 0.02] (fraction of L)");
  }
  if (side_samples < 64) throw Error(ErrorKind::InvalidArgument, "at least 64 samples per side are required");
  if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "bisection tolerance must be positive");
}

Vec2 UsefulSquare::point(double u, double v) const {
  double x = u * half_side;
  double y = v * half_side;
  if (orientation == SquareOrientation::oblique45) {
    constexpr double c = std::numbers::sqrt2 / 2.0;
    const double rx = c * (x - y);
    const double ry = c * (x + y);
    x = rx;
    y = ry;
  }
  return center + Vec2{x, y};
}

std::vector<Vec2> UsefulSquare::side_samples(int n) const {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples per side");
  static constexpr double corners[5][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
  std::vector<Vec2> pts;
  pts.reserve(4 * static_cast<std::size_t>(n - 1));
  for (int side = 0; side < 4; ++side) {
    const auto& from = corners[side];
    const auto& to = corners[side + 1];
    for (int i = 0; i < n - 1; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      pts.push_back(point(from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])));
    }
  }
  return pts;
}

std::vector<Vec2> UsefulSquare::grid_samples(int n) const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one grid sample");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    const double v = n == 1 ? 0.0 : -1.0 + 2.0 * j / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double u = n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1);
      pts.push_back(point(u, v));
    }
  }
  return pts;
}

LambdaExtrema lambda_extrema_on_square(const UsefulSquare& sq, const PlanarParams& params, int n) {
  LambdaExtrema ext{std::numeric_limits<double>::infinity(), 0.0};
  for (const Vec2& p : sq.side_samples(n)) {
    AmplificationFactors f;
    try {
      f = planar::amplification2(p, params);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " at sample " + describe(p), e.leg());
    }
    ext.min = std::min(ext.min, f.lambda_min);
    ext.max = std::max(ext.max, f.lambda_max);
  }
  return ext;
}

FeasibilityReport check_square(const UsefulSquare& sq, const AmplificationBounds& bounds,
                               const PlanarParams& params, int n) {
  return check_points(sq.side_samples(n), bounds, params);
}

bool square_feasible(const UsefulSquare& sq, const AmplificationBounds& bounds, const PlanarParams& params,
                     int n) {
  return check_square(sq, bounds, params, n).feasible;
}

FeasibilityReport check_square_interior(const UsefulSquare& sq, const AmplificationBounds& bounds,
                                        const PlanarParams& params, int n) {
  return check_points(sq.grid_samples(n), bounds, params);
}

WorkspaceResult optimize_square(SquareOrientation orientation, const AmplificationBounds& bounds,
                                const PlanarParams& params, const SquareSearch& search) {
  params.validate();
  bounds.validate();
  search.validate();

  // Each candidate is (anchor point, local coordinates of the anchor inside
  // the unit square). Free placement anchors at the center, (0, 0).
  std::vector<std::pair<Vec2, Vec2>> seeds;
  if (search.placement == SquarePlacement::free) {
    const int half = static_cast<int>(std::lround(1.0 / search.center_step));
    const double step = params.L / half;
    for (int i = -half; i <= half; ++i)
      for (int j = -half; j <= half; ++j) seeds.push_back({Vec2{i * step, j * step}, Vec2{0.0, 0.0}});
  } else {
    const int per_side = static_cast<int>(std::ceil(2.0 / search.center_step));
    static constexpr double corners[5][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    for (int side = 0; side < 4; ++side) {
      for (int i = 0; i < per_side; ++i) {
        const double t = static_cast<double>(i) / per_side;
        const auto& a = corners[side];
        const auto& b = corners[side + 1];
        seeds.push_back({Vec2{0.0, 0.0}, Vec2{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}});
      }
    }
  }

  const auto candidates = detail::parallel_map(seeds.size(), [&](std::size_t k) {
    return grow(seeds[k].first, seeds[k].second, orientation, bounds, params, search);
  });

  const Candidate* best = nullptr;
  for (const Candidate& c : candidates) {
    if (!c.feasible) continue;
    if (best == nullptr || better(c.square, best->square)) best = &c;
  }
  if (best == nullptr) throw Error(ErrorKind::NoFeasibleSquare, "no feasible square, even of zero size");

  WorkspaceResult result;
  result.best = best->square;
  result.area = best->square.area();
  result.lambda_extrema = lambda_extrema_on_square(best->square, params, search.side_samples);
  result.samples_per_side = search.side_samples;
  result.placement = search.placement;
  return result;
}

std::vector<AmplificationSample> amplification_map(const PlanarParams& params, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "map needs at least 2 samples per axis");
  std::vector<AmplificationSample> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 p{params.L * (-1.0 + 2.0 * i / (n - 1)), params.L * (-1.0 + 2.0 * j / (n - 1))};
      AmplificationSample s{p, std::nullopt};
      try {
        s.factors = planar::amplification2(p, params);
      } catch (const Error&) {
      }
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace pkm::workspace
