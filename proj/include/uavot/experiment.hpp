#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavot/air_channel.hpp"
#include "uavot/config.hpp"
#include "uavot/grid_density.hpp"
#include "uavot/hover.hpp"
#include "uavot/partitioning.hpp"
#include "uavot/service.hpp"

namespace uavot {

struct Scenario1Outcome {
  service::Scenario1Result proposed;
  Partition voronoi;
  std::vector<double> voronoi_service;
  double total_service_proposed = 0.0;
  double total_service_voronoi = 0.0;
  std::vector<double> jain_proposed;  // one per seed
  std::vector<double> jain_voronoi;
};

struct Scenario2Outcome {
  hover::Scenario2Result proposed;
  Partition voronoi;
  hover::HoverReport voronoi_report;
  std::vector<hover::SampledHover> sampled_proposed;  // one per seed
  std::vector<hover::SampledHover> sampled_voronoi;
};

/// Everything computed for one sweep point.
struct PointOutcome {
  AreaGrid grid;
  std::vector<UavNode> uavs;
  RadioField radio;
  std::vector<std::uint64_t> seeds;
  std::optional<Scenario1Outcome> s1;
  std::optional<Scenario2Outcome> s2;
};

/// Runs the selected scenarios and their baselines for one fully-specified
/// configuration (sweep value already applied).
PointOutcome evaluate_point(const ExperimentConfig& config);

struct MetricRow {
  std::string metric;
  std::optional<std::uint64_t> seed;  // empty: deterministic or mean over seeds
  bool mean = false;
  double value = 0.0;
};

/// Flattens an outcome into metric rows. Sampled metrics come as one row per
/// seed followed by a mean row; deterministic metrics have no seed.
std::vector<MetricRow> summarize(const PointOutcome& outcome);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  bool trace = false;
};

/// Exit codes of run_experiment.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitInfeasible = 3, kExitConvergence = 4 };

/// Runs every sweep point and writes metrics.csv, per-point CSV dumps and
/// manifest.ini into options.out_dir. Diagnostics go to `log`.
int run_experiment(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);

}  // namespace uavot
