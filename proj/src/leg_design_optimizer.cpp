#include "pkmdesign/leg_design_optimizer.hpp"

#include <cmath>
#include <numbers>

#include "pkmdesign/parallel.hpp"

namespace pkm::legdesign {

using spatial::ThirdLegParams;
using workspace::UsefulSquare;

void BetaSampling::validate() const {
  if (!(beta_step > 0.0) || beta_step > std::numbers::pi) {
    throw Error(ErrorKind::InvalidArgument, "beta step must be in (0, 180] degrees");
  }
  if (workspace_samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one workspace sample");
}

void DesignGrid::validate() const {
  if (L1_values.empty() || L2_values.empty()) throw Error(ErrorKind::InvalidArgument, "design grid is empty");
  for (double v : L1_values)
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "L1 values must be positive");
  for (double v : L2_values)
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "L2 values must be positive");
  if (!(margin_threshold > 0.0 && margin_threshold < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "margin threshold must lie in (0, 1)");
  }
  sampling.validate();
}

std::vector<double> DesignGrid::range(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw Error(ErrorKind::InvalidArgument, "invalid range lo:hi:step");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long k = 0; k <= count; ++k) out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
  return out;
}

bool pose_admissible(const Vec2& p, double beta, const ThirdLegParams& params3, double threshold) {
  spatial::LegMargins m;
  try {
    m = spatial::leg3_margins({p.x(), p.y(), beta}, params3);
  } catch (const Error&) {
    return false;
  }
  return m.serial > threshold && m.parallel > threshold;
}

PointInterval beta_interval_at(const Vec2& p, const ThirdLegParams& params3, double threshold,
                               double beta_step) {
  PointInterval out;
  if (!pose_admissible(p, 0.0, params3, threshold)) return out;
  out.reference_ok = true;
  const long max_steps = static_cast<long>(std::floor(std::numbers::pi / beta_step + 1e-9));
  long up = 0;
  while (up < max_steps && pose_admissible(p, (up + 1) * beta_step, params3, threshold)) ++up;
  long down = 0;
  while (down < max_steps && pose_admissible(p, -(down + 1) * beta_step, params3, threshold)) ++down;
  out.interval = {-down * beta_step, up * beta_step};
  return out;
}

BetaInterval beta_range(double L1, double L2, const UsefulSquare& square, double threshold,
                        const BetaSampling& sampling) {
  sampling.validate();
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "margin threshold must lie in (0, 1)");
  }
  const ThirdLegParams params3 = ThirdLegParams::centered_on(square.center, L1, L2);
  params3.validate();

  if (!pose_admissible(square.center, 0.0, params3, threshold)) {
    throw Error(ErrorKind::CenterInfeasible, "reference orientation infeasible at the square center", 3);
  }
  BetaInterval range{-std::numbers::pi, std::numbers::pi};
  for (const Vec2& p : square.grid_samples(sampling.workspace_samples)) {
    const PointInterval at = beta_interval_at(p, params3, threshold, sampling.beta_step);
    if (!at.reference_ok) return {};
    range.lo = std::max(range.lo, at.interval.lo);
    range.hi = std::min(range.hi, at.interval.hi);
  }
  return range;
}

BetaRangeMap sweep_designs(const DesignGrid& grid, const UsefulSquare& square) {
  grid.validate();
  const std::size_t n2 = grid.L2_values.size();
  BetaRangeMap map;
  map.grid = grid;
  map.ranges_deg = detail::parallel_map(grid.L1_values.size() * n2, [&](std::size_t k) {
    try {
      const BetaInterval r = beta_range(grid.L1_values[k / n2], grid.L2_values[k % n2], square,
                                        grid.margin_threshold, grid.sampling);
      return rad2deg(r.width());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CenterInfeasible) return 0.0;
      throw;
    }
  });
  return map;
}

DesignOptimum find_optimum(const BetaRangeMap& map) {
  const auto& g = map.grid;
  if (map.ranges_deg.empty() || map.ranges_deg.size() != g.L1_values.size() * g.L2_values.size()) {
    throw Error(ErrorKind::InvalidArgument, "beta range map is empty or malformed");
  }
  DesignOptimum best;
  bool found = false;
  for (std::size_t i = 0; i < g.L1_values.size(); ++i) {
    for (std::size_t j = 0; j < g.L2_values.size(); ++j) {
      const double r = map.at(i, j);
      if (!(r > 0.0)) continue;
      const double L1 = g.L1_values[i];
      const double L2 = g.L2_values[j];
      const bool wins = !found || r > best.range_deg ||
                        (r == best.range_deg && (L2 < best.L2 || (L2 == best.L2 && L1 < best.L1)));
      if (wins) {
        best = {L1, L2, L2 / L1, r};
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorKind::AllInfeasible, "every design in the map has a zero beta range");
  return best;
}

}  // namespace pkm::legdesign
