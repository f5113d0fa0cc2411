#ifndef PLATE_ECHO_CONFIG_HPP
#define PLATE_ECHO_CONFIG_HPP

// Experiment description in INI form. Every key is optional; missing keys keep
// the values of the chosen preset. Unknown sections or keys are errors.
//
//   [shape]    kind, params (space separated), center ("x y")
//   [forward]  k, n_dirs, quad_nodes
//   [imaging]  x_min, x_max, y_min, y_max, nx, ny, rho, which (ip|norm),
//              delta, seed, mask_rows, mask_cols ("1-16,20")
//   [verify]   decay_dirs, decay_samples
//   [output]   dir, matrix, oracle, grid, pgm (empty: no raster)

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "plate_echo/error.hpp"
#include "plate_echo/geometry.hpp"
#include "plate_echo/imaging.hpp"
#include "plate_echo/io.hpp"

namespace plate_echo {

struct ExperimentConfig {
  ShapeKind shape = ShapeKind::star;
  std::vector<double> shape_params = default_params(ShapeKind::star);
  Point center = Point::Zero();

  double k = 4.0;
  int n_dirs = 64;
  int quad_nodes = 128;

  GridSpec grid;
  double rho = 4.0;
  Indicator which = Indicator::ip;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> mask_rows;  // 1-based
  std::vector<int> mask_cols;

  int decay_dirs = 1024;
  int decay_samples = 32;

  std::string out_dir = "out";
  std::string matrix_file = "farfield.txt";
  std::string oracle_file = "oracle_farfield.txt";
  std::string grid_file = "grid.csv";
  std::string pgm_file;

  ParametricCurve curve() const { return ParametricCurve(shape, shape_params, center); }
  ApertureMask mask() const { return {mask_rows, mask_cols}; }
  NoiseModel noise() const { return {delta, seed}; }
  std::filesystem::path output_path(const std::string& name) const { return std::filesystem::path(out_dir) / name; }

  void validate() const;
};

inline ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "paper-star" || name == "paper-defaults") return cfg;
  if (name == "paper-peanut") {
    cfg.shape = ShapeKind::peanut;
    cfg.shape_params = default_params(ShapeKind::peanut);
    return cfg;
  }
  throw ConfigError("unknown preset '" + name + "' (expected paper-star or paper-peanut)");
}

inline void ExperimentConfig::validate() const {
  try {
    (void)curve();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("shape: ") + e.what());
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("k must be positive and finite");
  if (n_dirs < 4) throw ConfigError("n_dirs must be at least 4");
  if (quad_nodes < 16 || quad_nodes % 2 != 0) throw ConfigError("quad_nodes must be even and at least 16");
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ConfigError("rho must be positive");
  if (!(delta >= 0.0) || !(delta < 1.0)) throw ConfigError("delta must lie in [0, 1)");
  for (int i : mask_rows)
    if (i < 1 || i > n_dirs) throw ConfigError("mask_rows index " + std::to_string(i) + " outside 1..n_dirs");
  for (int j : mask_cols)
    if (j < 1 || j > n_dirs) throw ConfigError("mask_cols index " + std::to_string(j) + " outside 1..n_dirs");
  if (decay_dirs < 4) throw ConfigError("decay_dirs must be at least 4");
  if (decay_samples < 1) throw ConfigError("decay_samples must be positive");
  if (matrix_file.empty() || grid_file.empty() || oracle_file.empty()) throw ConfigError("output file names must be non-empty");
}

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("bad value for " + key + ": '" + raw + "'");
  return value;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::istringstream in(raw);
  for (std::string tok; in >> tok;) out.push_back(parse_number<double>(key, tok));
  return out;
}

/// "1-16,48-64" -> {1..16, 48..64}; empty string -> {}.
inline std::vector<int> parse_ranges(const std::string& key, const std::string& raw) {
  std::set<int> out;
  std::istringstream in(raw);
  for (std::string part; std::getline(in, part, ',');) {
    part = trim(part);
    if (part.empty()) continue;
    const auto dash = part.find('-', 1);
    const int lo = parse_number<int>(key, part.substr(0, dash));
    const int hi = dash == std::string::npos ? lo : parse_number<int>(key, part.substr(dash + 1));
    if (hi < lo) throw ConfigError("bad range in " + key + ": '" + part + "'");
    for (int i = lo; i <= hi; ++i) out.insert(i);
  }
  return {out.begin(), out.end()};
}

inline std::string format_ranges(const std::vector<int>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && idx[j + 1] == idx[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(idx[i]);
    if (j > i) out += '-' + std::to_string(idx[j]);
    i = j + 1;
  }
  return out;
}

inline std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : " ") + io::format_double(x);
  return out;
}

}  // namespace config_detail

/// Overlays INI text on a base configuration and validates the result.
inline ExperimentConfig parse_config(const std::string& text, ExperimentConfig cfg = ExperimentConfig{}) {
  using namespace config_detail;
  boost::property_tree::ptree tree;
  try {
    std::istringstream in(text);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  bool shape_changed = false, params_given = false;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const std::string v = trim(node.data());
      if (section == "shape") {
        if (key == "kind") {
          try {
            cfg.shape = shape_kind_from_string(v);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
          shape_changed = true;
        } else if (key == "params") {
          cfg.shape_params = parse_list(name, v);
          params_given = true;
        } else if (key == "center") {
          const auto c = parse_list(name, v);
          if (c.size() != 2) throw ConfigError("shape.center needs two numbers");
          cfg.center = Point(c[0], c[1]);
        } else {
          throw ConfigError("unknown key " + name);
        }
      } else if (section == "forward") {
        if (key == "k") cfg.k = parse_number<double>(name, v);
        else if (key == "n_dirs") cfg.n_dirs = parse_number<int>(name, v);
        else if (key == "quad_nodes") cfg.quad_nodes = parse_number<int>(name, v);
        else throw ConfigError("unknown key " + name);
      } else if (section == "imaging") {
        if (key == "x_min") cfg.grid.x_min = parse_number<double>(name, v);
        else if (key == "x_max") cfg.grid.x_max = parse_number<double>(name, v);
        else if (key == "y_min") cfg.grid.y_min = parse_number<double>(name, v);
        else if (key == "y_max") cfg.grid.y_max = parse_number<double>(name, v);
        else if (key == "nx") cfg.grid.nx = parse_number<int>(name, v);
        else if (key == "ny") cfg.grid.ny = parse_number<int>(name, v);
        else if (key == "rho") cfg.rho = parse_number<double>(name, v);
        else if (key == "which") {
          try {
            cfg.which = indicator_from_string(v);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        } else if (key == "delta") cfg.delta = parse_number<double>(name, v);
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(name, v);
        else if (key == "mask_rows") cfg.mask_rows = parse_ranges(name, v);
        else if (key == "mask_cols") cfg.mask_cols = parse_ranges(name, v);
        else throw ConfigError("unknown key " + name);
      } else if (section == "verify") {
        if (key == "decay_dirs") cfg.decay_dirs = parse_number<int>(name, v);
        else if (key == "decay_samples") cfg.decay_samples = parse_number<int>(name, v);
        else throw ConfigError("unknown key " + name);
      } else if (section == "output") {
        if (key == "dir") cfg.out_dir = v;
        else if (key == "matrix") cfg.matrix_file = v;
        else if (key == "oracle") cfg.oracle_file = v;
        else if (key == "grid") cfg.grid_file = v;
        else if (key == "pgm") cfg.pgm_file = v;
        else throw ConfigError("unknown key " + name);
      } else {
        throw ConfigError("unknown section [" + section + "]");
      }
    }
  }
  if (shape_changed && !params_given) cfg.shape_params = default_params(cfg.shape);
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = ExperimentConfig{}) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const FormatError&) {
    throw ConfigError("cannot read config " + path.string());
  }
  return parse_config(text, std::move(base));
}

/// Effective configuration with every key written out.
inline std::string serialize_config(const ExperimentConfig& cfg) {
  using config_detail::format_list;
  using config_detail::format_ranges;
  using io::format_double;
  std::ostringstream out;
  out << "[shape]\n"
      << "kind = " << to_string(cfg.shape) << "\n"
      << "params = " << format_list(cfg.shape_params) << "\n"
      << "center = " << format_double(cfg.center.x()) << " " << format_double(cfg.center.y()) << "\n\n"
      << "[forward]\n"
      << "k = " << format_double(cfg.k) << "\n"
      << "n_dirs = " << cfg.n_dirs << "\n"
      << "quad_nodes = " << cfg.quad_nodes << "\n\n"
      << "[imaging]\n"
      << "x_min = " << format_double(cfg.grid.x_min) << "\n"
      << "x_max = " << format_double(cfg.grid.x_max) << "\n"
      << "y_min = " << format_double(cfg.grid.y_min) << "\n"
      << "y_max = " << format_double(cfg.grid.y_max) << "\n"
      << "nx = " << cfg.grid.nx << "\n"
      << "ny = " << cfg.grid.ny << "\n"
      << "rho = " << format_double(cfg.rho) << "\n"
      << "which = " << to_string(cfg.which) << "\n"
      << "delta = " << format_double(cfg.delta) << "\n"
      << "seed = " << cfg.seed << "\n"
      << "mask_rows = " << format_ranges(cfg.mask_rows) << "\n"
      << "mask_cols = " << format_ranges(cfg.mask_cols) << "\n\n"
      << "[verify]\n"
      << "decay_dirs = " << cfg.decay_dirs << "\n"
      << "decay_samples = " << cfg.decay_samples << "\n\n"
      << "[output]\n"
      << "dir = " << cfg.out_dir << "\n"
      << "matrix = " << cfg.matrix_file << "\n"
      << "oracle = " << cfg.oracle_file << "\n"
      << "grid = " << cfg.grid_file << "\n"
      << "pgm = " << cfg.pgm_file << "\n";
  return out.str();
}

}  // namespace plate_echo

#endif  // PLATE_ECHO_CONFIG_HPP
