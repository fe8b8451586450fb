#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "pkmdesign/cli.hpp"

namespace pkm::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class Record {
 public:
  explicit Record(std::ostream& out) : out_(out) {}

  Record& put(const std::string& key, double v) {
    out_ << key << " = " << format_number(v) << '\n';
    return *this;
  }
  Record& put(const std::string& key, const std::string& v) {
    out_ << key << " = " << v << '\n';
    return *this;
  }
  template <std::size_t N>
  Record& put_matrix(const std::string& name, const Matrix<N>& m) {
    for (std::size_t r = 0; r < N; ++r) {
      std::string row;
      for (std::size_t c = 0; c < N; ++c) row += (c ? ", " : "") + format_number(m(r, c));
      put(name + ".row" + std::to_string(r + 1), row);
    }
    return *this;
  }

 private:
  std::ostream& out_;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, what + ": malformed number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_count(const std::string& text, const std::string& what, std::size_t lo, std::size_t hi) {
  auto v = parse_numbers(text, what);
  if (v.size() < lo || v.size() > hi) {
    throw Error(ErrorKind::InvalidArgument, what + ": expected " + std::to_string(lo) +
                                                (lo == hi ? "" : "-" + std::to_string(hi)) + " comma-separated values");
  }
  return v;
}

std::vector<double> parse_range(const std::string& text, const std::string& what) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_count(item, what, 1, 1)[0]);
  if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, what + ": expected lo:hi:step");
  return legdesign::DesignGrid::range(parts[0], parts[1], parts[2]);
}

spatial::SpatialPose parse_pose(const std::string& text) {
  const auto v = parse_count(text, "--pose", 2, 3);
  return {v[0], v[1], wrap_angle(v.size() == 3 ? deg2rad(v[2]) : 0.0)};
}

void put_planar(Record& rec, const Vec2& p, const planar::PlanarParams& params) {
  const auto jp = planar::jacobians2(p, params);
  if (jp.J) {
    const auto sv = singular_values(*jp.J);
    rec.put("lambda_min", sv[1]).put("lambda_max", sv[0]);
  } else {
    rec.put("lambda_min", "singular").put("lambda_max", "singular");
  }
  const auto m = planar::margins2(p, params);
  rec.put("parallel_margin", m.parallel).put("serial1_margin", m.serial1).put("serial2_margin", m.serial2);
}

void put_leg3(Record& rec, const spatial::SpatialPose& pose, const spatial::ThirdLegParams& params3) {
  const auto m = spatial::leg3_margins(pose, params3);
  const auto a = spatial::angles_gamma_sigma(pose, params3);
  rec.put("leg3_serial_margin", m.serial)
      .put("leg3_parallel_margin", m.parallel)
      .put("gamma_deg", rad2deg(a.gamma))
      .put("sigma_deg", rad2deg(a.sigma));
}

struct Options {
  std::string config_path;
  std::string map_path;
  int samples = 0;
  unsigned seed = 1;

  std::string pose;
  std::string rho;
  double beta_hint_deg = 0.0;
  std::string orientation;
  std::string placement = "isotropic_on_boundary";
  std::string bounds;
  int map_resolution = 101;
  std::string l1_range = "0.5:1.5:0.1";
  std::string l2_range = "0.5:2.7:0.1";
  std::string square;
  std::string from_map;
  double threshold = -1.0;
  double beta_step_deg = 0.5;
};

workspace::AmplificationBounds bounds_from(const Options& o, const MachineConfig& cfg) {
  workspace::AmplificationBounds b = cfg.bounds;
  if (!o.bounds.empty()) {
    const auto v = parse_count(o.bounds, "--bounds", 2, 2);
    b = {v[0], v[1]};
  }
  b.validate();
  return b;
}

workspace::SquareOrientation orientation_from(const Options& o, workspace::SquareOrientation fallback) {
  if (o.orientation.empty()) return fallback;
  const auto parsed = workspace::parse_orientation(o.orientation);
  if (!parsed) throw Error(ErrorKind::InvalidArgument, "--orientation must be axis_aligned or oblique45");
  return *parsed;
}

workspace::SquareSearch search_from(const Options& o) {
  workspace::SquareSearch s;
  const auto placement = workspace::parse_placement(o.placement);
  if (!placement) throw Error(ErrorKind::InvalidArgument, "--placement must be isotropic_on_boundary or free");
  s.placement = *placement;
  if (o.samples > 0) s.side_samples = o.samples;
  s.validate();
  return s;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fill) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  fill(f);
}

int cmd_ik(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto pose = parse_pose(o.pose);
  const auto params = cfg.planar();
  const auto params3 = cfg.third_leg();
  const auto q = spatial::full_ik3(pose, params, params3);
  Record rec(out);
  rec.put("command", "ik").put("x", pose.x).put("y", pose.y).put("beta_deg", rad2deg(pose.beta));
  rec.put("rho1", q.rho1).put("rho2", q.rho2).put("rho3", q.rho3);
  put_planar(rec, pose.xy(), params);
  put_leg3(rec, pose, params3);
  return kExitOk;
}

int cmd_fk(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto v = parse_count(o.rho, "--rho", 2, 3);
  const auto params = cfg.planar();
  Record rec(out);
  rec.put("command", "fk");
  if (v.size() == 2) {
    const Vec2 p = planar::fk2({v[0], v[1]}, params);
    rec.put("rho1", v[0]).put("rho2", v[1]).put("x", p.x()).put("y", p.y());
    put_planar(rec, p, params);
    return kExitOk;
  }
  const auto params3 = cfg.third_leg();
  const auto pose = spatial::full_fk3({v[0], v[1], v[2]}, params, params3, deg2rad(o.beta_hint_deg));
  rec.put("rho1", v[0]).put("rho2", v[1]).put("rho3", v[2]);
  rec.put("x", pose.x).put("y", pose.y).put("beta_deg", rad2deg(pose.beta));
  put_planar(rec, pose.xy(), params);
  put_leg3(rec, pose, params3);
  return kExitOk;
}

int cmd_jac(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto v = parse_count(o.pose, "--pose", 2, 3);
  Record rec(out);
  rec.put("command", "jac");
  if (v.size() == 2) {
    const auto jp = planar::jacobians2({v[0], v[1]}, cfg.planar());
    rec.put_matrix("A", jp.A).put_matrix("B", jp.B).put("det_A", determinant(jp.A));
    rec.put("parallel_singular", jp.parallel_singular ? "true" : "false");
    if (jp.J) rec.put_matrix("J", *jp.J);
    return kExitOk;
  }
  const auto pose = parse_pose(o.pose);
  const auto jp = spatial::jacobians3(pose, cfg.planar(), cfg.third_leg());
  rec.put_matrix("A", jp.A).put_matrix("B", jp.B).put("det_A", determinant(jp.A));
  rec.put("parallel_singular", jp.parallel_singular ? "true" : "false");
  if (jp.J) rec.put_matrix("J", *jp.J);
  return kExitOk;
}

int cmd_amp(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto v = parse_count(o.pose, "--pose", 2, 3);
  const auto f = planar::amplification2({v[0], v[1]}, cfg.planar());
  Record(out).put("command", "amp").put("x", v[0]).put("y", v[1]).put("lambda_min", f.lambda_min).put("lambda_max",
                                                                                                     f.lambda_max);
  return kExitOk;
}

int cmd_margins(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto v = parse_count(o.pose, "--pose", 2, 3);
  Record rec(out);
  rec.put("command", "margins");
  const auto m = planar::margins2({v[0], v[1]}, cfg.planar());
  rec.put("parallel_margin", m.parallel).put("serial1_margin", m.serial1).put("serial2_margin", m.serial2);
  if (v.size() == 3) put_leg3(rec, parse_pose(o.pose), cfg.third_leg());
  return kExitOk;
}

void put_workspace(Record& rec, const workspace::WorkspaceResult& r, workspace::SquareOrientation orientation,
                   const workspace::AmplificationBounds& bounds) {
  rec.put("orientation", std::string(workspace::to_string(orientation)))
      .put("placement", std::string(workspace::to_string(r.placement)))
      .put("lambda_lo", bounds.lambda_lo)
      .put("lambda_hi", bounds.lambda_hi)
      .put("center_x", r.best.center.x())
      .put("center_y", r.best.center.y())
      .put("half_side", r.best.half_side)
      .put("area", r.area)
      .put("side_lambda_min", r.lambda_extrema.min)
      .put("side_lambda_max", r.lambda_extrema.max)
      .put("samples_per_side", static_cast<double>(r.samples_per_side));
}

int cmd_workspace(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto orientation = orientation_from(o, workspace::SquareOrientation::axis_aligned);
  const auto bounds = bounds_from(o, cfg);
  const auto params = cfg.planar();
  const auto result = workspace::optimize_square(orientation, bounds, params, search_from(o));
  Record rec(out);
  rec.put("command", "workspace");
  put_workspace(rec, result, orientation, bounds);
  const bool reference_setting = cfg.L == 1.0 && bounds.lambda_lo == 1.0 / 3.0 && bounds.lambda_hi == 3.0;
  if (reference_setting) {
    const double ref = workspace::reference_area(orientation);
    rec.put("reference_area", ref).put("area_deviation", result.area - ref);
  }
  if (!o.map_path.empty()) {
    const auto samples = workspace::amplification_map(params, o.map_resolution);
    write_file(o.map_path, [&](std::ostream& f) { write_amplification_csv(f, samples); });
    rec.put("map", o.map_path);
  }
  return kExitOk;
}

void put_optimum(Record& rec, const legdesign::DesignOptimum& best) {
  rec.put("best_L1", best.L1).put("best_L2", best.L2).put("ratio", best.ratio).put("beta_range_deg", best.range_deg);
}

int cmd_legopt(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  Record rec(out);
  rec.put("command", "legopt");
  if (!o.from_map.empty()) {
    std::ifstream f(o.from_map);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open map '" + o.from_map + "'");
    const auto map = read_beta_map_csv(f);
    put_optimum(rec, legdesign::find_optimum(map));
    return kExitOk;
  }

  legdesign::DesignGrid grid;
  grid.L1_values = parse_range(o.l1_range, "--L1");
  grid.L2_values = parse_range(o.l2_range, "--L2");
  grid.margin_threshold = o.threshold > 0.0 ? o.threshold : cfg.margin_threshold;
  grid.sampling.beta_step = deg2rad(o.beta_step_deg);
  if (o.samples > 0) grid.sampling.workspace_samples = o.samples;
  grid.validate();

  workspace::UsefulSquare square;
  const auto orientation = orientation_from(o, workspace::SquareOrientation::oblique45);
  if (!o.square.empty()) {
    const auto v = parse_count(o.square, "--square", 3, 3);
    if (!(v[2] >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--square half side must be >= 0");
    square = {{v[0], v[1]}, v[2], orientation};
  } else {
    workspace::SquareSearch search;
    const auto placement = workspace::parse_placement(o.placement);
    if (!placement) throw Error(ErrorKind::InvalidArgument, "--placement must be isotropic_on_boundary or free");
    search.placement = *placement;
    square = workspace::optimize_square(orientation, bounds_from(o, cfg), cfg.planar(), search).best;
  }
  rec.put("orientation", std::string(workspace::to_string(square.orientation)))
      .put("square_center_x", square.center.x())
      .put("square_center_y", square.center.y())
      .put("square_half_side", square.half_side)
      .put("margin_threshold", grid.margin_threshold);

  const auto map = legdesign::sweep_designs(grid, square);
  if (!o.map_path.empty()) {
    write_file(o.map_path, [&](std::ostream& f) { write_beta_map_csv(f, map); });
    rec.put("map", o.map_path);
  }
  put_optimum(rec, legdesign::find_optimum(map));
  return kExitOk;
}

/// Randomized consistency checks: planar round trip, leg-3 closure and the
/// analytic Jacobians against central differences.
int cmd_selftest(const Options& o, const MachineConfig& cfg, std::ostream& out) {
  const auto params = cfg.planar();
  const auto params3 = cfg.third_leg();
  const int count = o.samples > 0 ? o.samples : 1000;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> coord(-cfg.L, cfg.L);
  std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);

  double round_trip = 0.0;
  double closure = 0.0;
  double jac_rel = 0.0;
  int tested = 0;
  for (int attempts = 0; tested < count && attempts < 100 * count; ++attempts) {
    const spatial::SpatialPose pose{coord(rng), coord(rng), angle(rng)};
    try {
      const auto jp = spatial::jacobians3(pose, params, params3);
      const double det2 = determinant(planar::jacobians2(pose.xy(), params).A) * params.assembly_mode;
      if (!jp.J || det2 < 5e-2 || planar::margins2(pose.xy(), params).parallel < 5e-2 ||
          spatial::leg3_margins(pose, params3).parallel < 5e-2)
        continue;
      const auto q = spatial::full_ik3(pose, params, params3);
      const auto back = spatial::full_fk3(q, params, params3, pose.beta);
      round_trip = std::max(round_trip, std::hypot(back.x - pose.x, back.y - pose.y));
      const auto leg = spatial::leg3_ik(pose.xy(), pose.beta, params3);
      closure = std::max(closure, std::abs(norm(leg.config.b3 - leg.config.a3) - params3.L2));
      const auto fd = finite_difference_jacobian(
          [&](const Vec3& r) {
            const auto s = spatial::full_fk3({r[0], r[1], r[2]}, params, params3, pose.beta);
            return Vec3{s.x, s.y, s.beta};
          },
          Vec3{q.rho1, q.rho2, q.rho3});
      jac_rel = std::max(jac_rel, frobenius_norm(fd - *jp.J) / frobenius_norm(*jp.J));
      ++tested;
    } catch (const Error&) {
    }
  }
  const bool ok = tested == count && round_trip <= 1e-9 && closure <= 1e-9 && jac_rel <= 1e-5;
  Record(out)
      .put("command", "selftest")
      .put("seed", static_cast<double>(o.seed))
      .put("poses", static_cast<double>(tested))
      .put("max_round_trip_error", round_trip)
      .put("max_closure_residual", closure)
      .put("max_jacobian_rel_error", jac_rel)
      .put("status", ok ? "pass" : "fail");
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kinematics, singularity margins and design optimization of a 2T1R parallel mechanism",
               "pkmdesign"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", o.config_path, "Machine config file (key = value lines)");
  app.add_option("--map", o.map_path, "CSV output path for workspace/legopt maps");
  app.add_option("--samples", o.samples,
                 "Samples: per square side (workspace), per square dimension (legopt), poses (selftest)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for randomized self-test poses");

  auto* ik = app.add_subcommand("ik", "Inverse kinematics at x,y[,beta_deg]");
  ik->add_option("--pose", o.pose, "x,y[,beta_deg]")->required();
  auto* fk = app.add_subcommand("fk", "Forward kinematics from rho1,rho2[,rho3]");
  fk->add_option("--rho", o.rho, "rho1,rho2[,rho3]")->required();
  fk->add_option("--beta-hint", o.beta_hint_deg, "Leg-3 closure root nearest this beta (deg)");
  auto* jac = app.add_subcommand("jac", "Parallel/serial Jacobians at x,y (2x2) or x,y,beta_deg (3x3)");
  jac->add_option("--pose", o.pose, "x,y[,beta_deg]")->required();
  auto* amp = app.add_subcommand("amp", "Velocity amplification factors at x,y");
  amp->add_option("--pose", o.pose, "x,y")->required();
  auto* margins = app.add_subcommand("margins", "Singularity margins at x,y[,beta_deg]");
  margins->add_option("--pose", o.pose, "x,y[,beta_deg]")->required();
  auto* ws = app.add_subcommand("workspace", "Largest square useful workspace");
  ws->add_option("--orientation", o.orientation, "axis_aligned (default) or oblique45");
  ws->add_option("--bounds", o.bounds, "lambda_lo,lambda_hi");
  ws->add_option("--placement", o.placement, "isotropic_on_boundary (default) or free");
  ws->add_option("--map-resolution", o.map_resolution, "Grid points per axis of the --map CSV")
      ->check(CLI::Range(2, 10000));
  auto* leg = app.add_subcommand("legopt", "Sweep third-leg lengths for the largest beta range");
  leg->add_option("--orientation", o.orientation, "Square orientation, oblique45 (default) or axis_aligned");
  leg->add_option("--bounds", o.bounds, "lambda_lo,lambda_hi for the square search");
  leg->add_option("--placement", o.placement, "Square placement for the square search");
  leg->add_option("--L1", o.l1_range, "lo:hi:step");
  leg->add_option("--L2", o.l2_range, "lo:hi:step");
  leg->add_option("--threshold", o.threshold, "Margin threshold (default from config)");
  leg->add_option("--beta-step", o.beta_step_deg, "Beta resolution in degrees");
  leg->add_option("--square", o.square, "cx,cy,half_side instead of searching");
  leg->add_option("--from-map", o.from_map, "Read a beta map CSV and report its optimum");
  auto* self = app.add_subcommand("selftest", "Randomized round-trip and Jacobian checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const MachineConfig cfg = o.config_path.empty() ? MachineConfig{} : MachineConfig::load(o.config_path);
    std::ostringstream record;
    int code = kExitUsage;
    if (ik->parsed()) code = cmd_ik(o, cfg, record);
    if (fk->parsed()) code = cmd_fk(o, cfg, record);
    if (jac->parsed()) code = cmd_jac(o, cfg, record);
    if (amp->parsed()) code = cmd_amp(o, cfg, record);
    if (margins->parsed()) code = cmd_margins(o, cfg, record);
    if (ws->parsed()) code = cmd_workspace(o, cfg, record);
    if (leg->parsed()) code = cmd_legopt(o, cfg, record);
    if (self->parsed()) code = cmd_selftest(o, cfg, record);
    out << record.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitFailure;
  }
}

}  // namespace pkm::cli
