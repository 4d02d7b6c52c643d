#include "uavot/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "uavot/errors.hpp"
#include "uavot/numeric.hpp"

namespace uavot {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"experiment", {"id", "scenario", "seeds", "base_seed", "sweep", "values"}},
      {"area", {"width_m", "height_m", "nx", "ny"}},
      {"density", {"kind", "mean_x_m", "mean_y_m", "sigma_m", "sigma_x_m", "sigma_y_m"}},
      {"uav",
       {"count", "altitude_m", "power_w", "power_dbm", "bandwidth_hz", "max_hover_s", "alpha"}},
      {"channel",
       {"carrier_hz", "mu_los", "mu_los_db", "mu_nlos", "mu_nlos_db", "b1", "b2", "noise_density",
        "noise_density_dbm", "beta", "gamma_th", "gamma_th_db"}},
      {"users", {"count", "load_bits"}},
      {"solver", {"rho", "max_iterations", "fixed_point_iterations", "voronoi_weights"}},
      {"manifest", {"version", "source"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(std::string_view text, const std::string& where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ConfigError(where + ": expected a finite number, got '" + t + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view text, const std::string& where) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(where + ": expected a non-negative integer, got '" + t + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, const std::string& where) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = t.find(',', start);
    out.push_back(parse_real(std::string_view(t).substr(start, comma - start), where));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  void real(const std::string& section, const std::string& key, double& out) const {
    if (auto t = text(section, key)) out = parse_real(*t, section + "." + key);
  }

  template <typename Int>
  void count(const std::string& section, const std::string& key, Int& out) const {
    if (auto t = text(section, key)) {
      const auto v = parse_count(*t, section + "." + key);
      if (v > std::numeric_limits<Int>::max()) throw ConfigError(section + "." + key + ": too large");
      out = static_cast<Int>(v);
    }
  }

  // Linear value or its logarithmic spelling, never both.
  void either(const std::string& section, const std::string& linear, const std::string& log_key,
              double (*convert)(double), double& out) const {
    const auto a = text(section, linear);
    const auto b = text(section, log_key);
    if (a && b) {
      throw ConfigError(section + ": both '" + linear + "' and '" + log_key + "' given");
    }
    if (a) out = parse_real(*a, section + "." + linear);
    if (b) out = convert(parse_real(*b, section + "." + log_key));
  }

 private:
  const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
    if (it == schema().end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }
}

std::string real17(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

std::size_t ceil_sqrt(std::size_t m) {
  std::size_t c = 1;
  while (c * c < m) ++c;
  return c;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void validate_point(const ExperimentConfig& c) {
  try {
    c.grid.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("area: ") + e.what());
  }
  require(!c.experiment_id.empty(), "experiment.id must not be empty");
  require(c.sigma_x_m > 0.0 && c.sigma_y_m > 0.0, "density: sigma must be positive");
  require(c.uav_count >= 1, "uav.count must be at least 1");
  require(c.altitude_m > 0.0, "uav.altitude_m must be positive");
  require(c.power_w > 0.0, "uav.power must be positive");
  require(c.bandwidth_hz > 0.0, "uav.bandwidth_hz must be positive");
  require(c.max_hover_s > 0.0, "uav.max_hover_s must be positive");
  require(c.alpha >= 0.0, "uav.alpha must be non-negative");
  require(c.channel.beta >= 0.0 && c.channel.beta <= 1.0, "channel.beta must lie in [0, 1]");
  try {
    c.channel.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
  require(c.users >= 1, "users.count must be at least 1");
  require(c.load_bits >= 0.0, "users.load_bits must be non-negative");
  require(c.seeds >= 1, "experiment.seeds must be at least 1");
  require(c.rho > 0.0, "solver.rho must be positive");
  require(c.max_iterations >= 1, "solver.max_iterations must be at least 1");
  require(c.fixed_point_iterations >= 1, "solver.fixed_point_iterations must be at least 1");
  if (!c.voronoi_weights.empty()) {
    require(c.voronoi_weights.size() == c.uav_count,
            "solver.voronoi_weights needs one weight per UAV");
    for (double w : c.voronoi_weights) require(w > 0.0, "solver.voronoi_weights must be positive");
  }
}

}  // namespace

std::string_view to_string(ScenarioSelect s) {
  switch (s) {
    case ScenarioSelect::one: return "1";
    case ScenarioSelect::two: return "2";
    case ScenarioSelect::both: return "both";
  }
  return "both";
}

std::string_view to_string(DensityKind d) {
  return d == DensityKind::uniform ? "uniform" : "gaussian";
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::none: return "none";
    case SweepVariable::beta: return "beta";
    case SweepVariable::sigma_o: return "sigma_o";
    case SweepVariable::tau_max: return "tau_max";
    case SweepVariable::bandwidth: return "bandwidth";
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::uav_count: return "uav_count";
  }
  return "none";
}

ScenarioSelect parse_scenario(std::string_view text) {
  if (text == "1") return ScenarioSelect::one;
  if (text == "2") return ScenarioSelect::two;
  if (text == "both") return ScenarioSelect::both;
  throw ConfigError("scenario must be 1, 2 or both, got '" + std::string(text) + "'");
}

SweepVariable parse_sweep_variable(std::string_view text) {
  for (auto v : {SweepVariable::none, SweepVariable::beta, SweepVariable::sigma_o,
                 SweepVariable::tau_max, SweepVariable::bandwidth, SweepVariable::alpha,
                 SweepVariable::uav_count}) {
    if (text == to_string(v)) return v;
  }
  throw ConfigError("unknown sweep variable '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  validate_point(*this);
  if (sweep == SweepVariable::none) {
    require(sweep_values.empty(), "experiment.values given without a sweep variable");
    return;
  }
  require(!sweep_values.empty(), "experiment.values must list at least one sweep value");
  if (sweep == SweepVariable::uav_count) {
    require(voronoi_weights.empty(), "solver.voronoi_weights cannot be combined with a UAV count sweep");
  }
  for (double v : sweep_values) validate_point(at(v));
}

std::vector<double> ExperimentConfig::points() const {
  if (sweep == SweepVariable::none) return {std::numeric_limits<double>::quiet_NaN()};
  return sweep_values;
}

ExperimentConfig ExperimentConfig::at(double value) const {
  ExperimentConfig c = *this;
  switch (sweep) {
    case SweepVariable::none: break;
    case SweepVariable::beta: c.channel.beta = value; break;
    case SweepVariable::sigma_o: c.sigma_x_m = c.sigma_y_m = value; break;
    case SweepVariable::tau_max: c.max_hover_s = value; break;
    case SweepVariable::bandwidth: c.bandwidth_hz = value; break;
    case SweepVariable::alpha: c.alpha = value; break;
    case SweepVariable::uav_count:
      require(value >= 1.0 && std::floor(value) == value, "uav_count sweep values must be positive integers");
      c.uav_count = static_cast<std::size_t>(value);
      break;
  }
  return c;
}

ExperimentConfig parse_config(std::istream& is) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed INI: ") + e.what());
  }
  check_keys(tree);
  const Reader r(tree);
  ExperimentConfig c;

  if (auto t = r.text("experiment", "id")) c.experiment_id = *t;
  if (auto t = r.text("experiment", "scenario")) c.scenario = parse_scenario(*t);
  r.count("experiment", "seeds", c.seeds);
  r.count("experiment", "base_seed", c.base_seed);
  if (auto t = r.text("experiment", "sweep")) c.sweep = parse_sweep_variable(*t);
  if (auto t = r.text("experiment", "values")) c.sweep_values = parse_list(*t, "experiment.values");

  r.real("area", "width_m", c.grid.width_m);
  r.real("area", "height_m", c.grid.height_m);
  r.count("area", "nx", c.grid.nx);
  r.count("area", "ny", c.grid.ny);

  if (auto t = r.text("density", "kind")) {
    if (*t == "uniform") {
      c.density = DensityKind::uniform;
    } else if (*t == "gaussian") {
      c.density = DensityKind::gaussian;
    } else {
      throw ConfigError("density.kind must be uniform or gaussian, got '" + *t + "'");
    }
  }
  r.real("density", "mean_x_m", c.mean_x_m);
  r.real("density", "mean_y_m", c.mean_y_m);
  if (auto t = r.text("density", "sigma_m")) {
    if (r.text("density", "sigma_x_m") || r.text("density", "sigma_y_m")) {
      throw ConfigError("density: sigma_m conflicts with sigma_x_m / sigma_y_m");
    }
    c.sigma_x_m = c.sigma_y_m = parse_real(*t, "density.sigma_m");
  }
  r.real("density", "sigma_x_m", c.sigma_x_m);
  r.real("density", "sigma_y_m", c.sigma_y_m);

  r.count("uav", "count", c.uav_count);
  r.real("uav", "altitude_m", c.altitude_m);
  r.either("uav", "power_w", "power_dbm", &dbm_to_watts, c.power_w);
  r.real("uav", "bandwidth_hz", c.bandwidth_hz);
  r.real("uav", "max_hover_s", c.max_hover_s);
  r.real("uav", "alpha", c.alpha);

  r.real("channel", "carrier_hz", c.channel.carrier_hz);
  r.either("channel", "mu_los", "mu_los_db", &db_to_linear, c.channel.mu_los);
  r.either("channel", "mu_nlos", "mu_nlos_db", &db_to_linear, c.channel.mu_nlos);
  r.real("channel", "b1", c.channel.b1);
  r.real("channel", "b2", c.channel.b2);
  r.either("channel", "noise_density", "noise_density_dbm", &dbm_to_watts,
           c.channel.noise_density);
  r.real("channel", "beta", c.channel.beta);
  r.either("channel", "gamma_th", "gamma_th_db", &db_to_linear, c.channel.gamma_th);

  r.count("users", "count", c.users);
  r.real("users", "load_bits", c.load_bits);

  r.real("solver", "rho", c.rho);
  r.count("solver", "max_iterations", c.max_iterations);
  r.count("solver", "fixed_point_iterations", c.fixed_point_iterations);
  if (auto t = r.text("solver", "voronoi_weights")) {
    c.voronoi_weights = parse_list(*t, "solver.voronoi_weights");
  }

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

void write_config(std::ostream& os, const ExperimentConfig& c) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) s += ", ";
      s += real17(v[j]);
    }
    return s;
  };
  os << "[experiment]\n"
     << "id = " << c.experiment_id << '\n'
     << "scenario = " << to_string(c.scenario) << '\n'
     << "seeds = " << c.seeds << '\n'
     << "base_seed = " << c.base_seed << '\n'
     << "sweep = " << to_string(c.sweep) << '\n';
  if (!c.sweep_values.empty()) os << "values = " << list(c.sweep_values) << '\n';
  os << "\n[area]\n"
     << "width_m = " << real17(c.grid.width_m) << '\n'
     << "height_m = " << real17(c.grid.height_m) << '\n'
     << "nx = " << c.grid.nx << '\n'
     << "ny = " << c.grid.ny << '\n'
     << "\n[density]\n"
     << "kind = " << to_string(c.density) << '\n'
     << "mean_x_m = " << real17(c.mean_x_m) << '\n'
     << "mean_y_m = " << real17(c.mean_y_m) << '\n'
     << "sigma_x_m = " << real17(c.sigma_x_m) << '\n'
     << "sigma_y_m = " << real17(c.sigma_y_m) << '\n'
     << "\n[uav]\n"
     << "count = " << c.uav_count << '\n'
     << "altitude_m = " << real17(c.altitude_m) << '\n'
     << "power_w = " << real17(c.power_w) << '\n'
     << "bandwidth_hz = " << real17(c.bandwidth_hz) << '\n'
     << "max_hover_s = " << real17(c.max_hover_s) << '\n'
     << "alpha = " << real17(c.alpha) << '\n'
     << "\n[channel]\n"
     << "carrier_hz = " << real17(c.channel.carrier_hz) << '\n'
     << "mu_los = " << real17(c.channel.mu_los) << '\n'
     << "mu_nlos = " << real17(c.channel.mu_nlos) << '\n'
     << "b1 = " << real17(c.channel.b1) << '\n'
     << "b2 = " << real17(c.channel.b2) << '\n'
     << "noise_density = " << real17(c.channel.noise_density) << '\n'
     << "beta = " << real17(c.channel.beta) << '\n'
     << "gamma_th = " << real17(c.channel.gamma_th) << '\n'
     << "\n[users]\n"
     << "count = " << c.users << '\n'
     << "load_bits = " << real17(c.load_bits) << '\n'
     << "\n[solver]\n"
     << "rho = " << real17(c.rho) << '\n'
     << "max_iterations = " << c.max_iterations << '\n'
     << "fixed_point_iterations = " << c.fixed_point_iterations << '\n';
  if (!c.voronoi_weights.empty()) os << "voronoi_weights = " << list(c.voronoi_weights) << '\n';
}

std::vector<UavNode> place_uavs_grid(std::size_t count, double width_m, double height_m,
                                     double altitude_m) {
  if (count < 1) throw ParameterError("place_uavs_grid: need at least one UAV");
  const std::size_t cols = ceil_sqrt(count);
  const std::size_t rows = (count + cols - 1) / cols;
  std::vector<UavNode> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t row = k / cols;
    const std::size_t col = k % cols;
    out[k].x = (static_cast<double>(col) + 0.5) * width_m / static_cast<double>(cols);
    out[k].y = (static_cast<double>(row) + 0.5) * height_m / static_cast<double>(rows);
    out[k].altitude = altitude_m;
  }
  return out;
}

std::vector<UavNode> make_uavs(const ExperimentConfig& c) {
  auto uavs = place_uavs_grid(c.uav_count, c.grid.width_m, c.grid.height_m, c.altitude_m);
  for (auto& u : uavs) {
    u.power_w = c.power_w;
    u.bandwidth_hz = c.bandwidth_hz;
    u.max_hover_s = c.max_hover_s;
  }
  return uavs;
}

AreaGrid make_density(const ExperimentConfig& c) {
  if (c.density == DensityKind::uniform) return uniform_density(c.grid);
  return truncated_gaussian(c.grid, c.mean_x_m, c.mean_y_m, c.sigma_x_m, c.sigma_y_m);
}

}  // namespace uavot
