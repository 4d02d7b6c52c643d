#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uavot/air_channel.hpp"
#include "uavot/grid_density.hpp"

namespace uavot {

enum class ScenarioSelect { one, two, both };
enum class DensityKind { uniform, gaussian };
enum class SweepVariable { none, beta, sigma_o, tau_max, bandwidth, alpha, uav_count };

std::string_view to_string(ScenarioSelect s);
std::string_view to_string(DensityKind d);
std::string_view to_string(SweepVariable v);
ScenarioSelect parse_scenario(std::string_view text);
SweepVariable parse_sweep_variable(std::string_view text);

/// Everything one experiment needs. Physical values are linear SI units;
/// the INI reader converts any `_db` / `_dbm` spelling on load.
struct ExperimentConfig {
  std::string experiment_id = "experiment";
  ScenarioSelect scenario = ScenarioSelect::both;

  GridSpec grid{};

  DensityKind density = DensityKind::gaussian;
  double mean_x_m = 250.0;
  double mean_y_m = 330.0;
  double sigma_x_m = 1000.0;
  double sigma_y_m = 1000.0;

  std::size_t uav_count = 5;
  double altitude_m = 200.0;
  double power_w = 0.5;
  double bandwidth_hz = 1e6;
  double max_hover_s = 1800.0;
  double alpha = 0.01;

  ChannelParams channel{};

  std::size_t users = 300;
  double load_bits = 1e7;

  std::size_t seeds = 50;
  std::uint64_t base_seed = 1;

  double rho = 1e-3;
  std::size_t max_iterations = 100000;
  std::size_t fixed_point_iterations = 200;
  std::vector<double> voronoi_weights;  // empty: equal weights

  SweepVariable sweep = SweepVariable::none;
  std::vector<double> sweep_values;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// The sweep points to run; a single NaN placeholder when nothing is swept.
  std::vector<double> points() const;

  /// Copy with the sweep variable set to `value`.
  ExperimentConfig at(double value) const;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical INI form; parse_config(write_config(c)) reproduces c exactly.
void write_config(std::ostream& os, const ExperimentConfig& config);

/// UAVs at the centres of a ceil(sqrt M) x ceil(M / ceil(sqrt M)) block
/// subdivision of the area, filled row by row from y = 0.
std::vector<UavNode> place_uavs_grid(std::size_t count, double width_m, double height_m,
                                     double altitude_m);

/// UAV list of a configuration (layout plus per-UAV radio settings).
std::vector<UavNode> make_uavs(const ExperimentConfig& config);

/// Density field of a configuration.
AreaGrid make_density(const ExperimentConfig& config);

}  // namespace uavot
