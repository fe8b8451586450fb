#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pkmdesign/leg_design_optimizer.hpp"
#include "pkmdesign/spatial_kinematics.hpp"
#include "pkmdesign/workspace_optimizer.hpp"

namespace pkm::cli {

/// Machine description read from a flat `key = value` file (`#` comments).
///
/// Recognized keys: L, L1, L2, rail3_anchor (x, y), workspace_center (x, y),
/// working_mode (s1, s2), assembly_mode, rho3_branch, lambda_lo, lambda_hi,
/// margin_threshold.
struct MachineConfig {
  double L = 1.0;
  double L1 = 1.0;
  double L2 = 1.8;
  std::optional<Vec2> rail3_anchor;
  /// Center used to place the third rail when no anchor is given.
  Vec2 workspace_center{0.0, 0.0};
  std::array<int, 2> working_mode{-1, -1};
  int assembly_mode = +1;
  int rho3_branch = +1;
  workspace::AmplificationBounds bounds;
  double margin_threshold = 0.2;

  planar::PlanarParams planar() const;
  spatial::ThirdLegParams third_leg() const;
  void validate() const;

  /// Throws InvalidArgument on unknown keys or malformed values.
  static MachineConfig parse(std::istream& in);
  static MachineConfig load(const std::string& path);
};

/// Fixed 6-significant-digit formatting; negative zero and |v| < 5e-13
/// print as 0, non-finite values as nan/inf.
std::string format_number(double v);

void write_beta_map_csv(std::ostream& out, const legdesign::BetaRangeMap& map);
/// Rebuilds the grid from the distinct L1/L2 values in file order.
legdesign::BetaRangeMap read_beta_map_csv(std::istream& in);

void write_amplification_csv(std::ostream& out, const std::vector<workspace::AmplificationSample>& samples);

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success, 1 kinematic/optimization failure, 2 bad arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkm::cli
