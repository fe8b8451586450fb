#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "pkmdesign/cli.hpp"

namespace pkm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "config key '" + key + "': malformed number '" + t + "'");
    }
    out.push_back(v);
  }
  return out;
}

double scalar(const std::string& key, const std::string& value) {
  const auto v = parse_list(key, value);
  if (v.size() != 1) throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' expects one number");
  return v[0];
}

Vec2 pair(const std::string& key, const std::string& value) {
  const auto v = parse_list(key, value);
  if (v.size() != 2) throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' expects two numbers");
  return {v[0], v[1]};
}

int sign(const std::string& key, double v) {
  if (v != 1.0 && v != -1.0) throw Error(ErrorKind::InvalidArgument, "config key '" + key + "' must be +1 or -1");
  return static_cast<int>(v);
}

}  // namespace

planar::PlanarParams MachineConfig::planar() const { return {L, working_mode, assembly_mode}; }

spatial::ThirdLegParams MachineConfig::third_leg() const {
  auto p = spatial::ThirdLegParams::centered_on(workspace_center, L1, L2, rho3_branch);
  if (rail3_anchor) p.rail3_anchor = *rail3_anchor;
  return p;
}

void MachineConfig::validate() const {
  planar().validate();
  third_leg().validate();
  bounds.validate();
  if (!(margin_threshold > 0.0 && margin_threshold < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "margin_threshold must lie in (0, 1)");
  }
}

MachineConfig MachineConfig::parse(std::istream& in) {
  MachineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "L") {
      cfg.L = scalar(key, value);
    } else if (key == "L1") {
      cfg.L1 = scalar(key, value);
    } else if (key == "L2") {
      cfg.L2 = scalar(key, value);
    } else if (key == "rail3_anchor") {
      cfg.rail3_anchor = pair(key, value);
    } else if (key == "workspace_center") {
      cfg.workspace_center = pair(key, value);
    } else if (key == "working_mode") {
      const Vec2 m = pair(key, value);
      cfg.working_mode = {sign(key, m.x()), sign(key, m.y())};
    } else if (key == "assembly_mode") {
      cfg.assembly_mode = sign(key, scalar(key, value));
    } else if (key == "rho3_branch") {
      cfg.rho3_branch = sign(key, scalar(key, value));
    } else if (key == "lambda_lo") {
      cfg.bounds.lambda_lo = scalar(key, value);
    } else if (key == "lambda_hi") {
      cfg.bounds.lambda_hi = scalar(key, value);
    } else if (key == "margin_threshold") {
      cfg.margin_threshold = scalar(key, value);
    } else {
      throw Error(ErrorKind::InvalidArgument, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

MachineConfig MachineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file '" + path + "'");
  return parse(in);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
  return buf;
}

void write_beta_map_csv(std::ostream& out, const legdesign::BetaRangeMap& map) {
  out << "L1,L2,beta_range_deg\n";
  const auto& g = map.grid;
  for (std::size_t i = 0; i < g.L1_values.size(); ++i)
    for (std::size_t j = 0; j < g.L2_values.size(); ++j)
      out << format_number(g.L1_values[i]) << ',' << format_number(g.L2_values[j]) << ','
          << format_number(map.at(i, j)) << '\n';
}

legdesign::BetaRangeMap read_beta_map_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "L1,L2,beta_range_deg") {
    throw Error(ErrorKind::InvalidArgument, "beta map CSV: missing header 'L1,L2,beta_range_deg'");
  }
  struct Row {
    double L1, L2, range;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto v = parse_list("csv row", line);
    if (v.size() != 3) throw Error(ErrorKind::InvalidArgument, "beta map CSV: expected 3 columns");
    rows.push_back({v[0], v[1], v[2]});
  }
  legdesign::BetaRangeMap map;
  auto& g = map.grid;
  auto add_unique = [](std::vector<double>& vals, double v) {
    if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
  };
  for (const Row& r : rows) {
    add_unique(g.L1_values, r.L1);
    add_unique(g.L2_values, r.L2);
  }
  if (rows.size() != g.L1_values.size() * g.L2_values.size() || rows.empty()) {
    throw Error(ErrorKind::InvalidArgument, "beta map CSV: rows do not form a full L1 x L2 grid");
  }
  map.ranges_deg.assign(rows.size(), 0.0);
  for (const Row& r : rows) {
    const auto i = std::find(g.L1_values.begin(), g.L1_values.end(), r.L1) - g.L1_values.begin();
    const auto j = std::find(g.L2_values.begin(), g.L2_values.end(), r.L2) - g.L2_values.begin();
    map.ranges_deg[static_cast<std::size_t>(i) * g.L2_values.size() + static_cast<std::size_t>(j)] = r.range;
  }
  return map;
}

void write_amplification_csv(std::ostream& out, const std::vector<workspace::AmplificationSample>& samples) {
  out << "x,y,lambda_min,lambda_max\n";
  for (const auto& s : samples) {
    const double nan = std::nan("");
    out << format_number(s.p.x()) << ',' << format_number(s.p.y()) << ','
        << format_number(s.factors ? s.factors->lambda_min : nan) << ','
        << format_number(s.factors ? s.factors->lambda_max : nan) << '\n';
  }
}

}  // namespace pkm::cli
