#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "uavot/config.hpp"
#include "uavot/errors.hpp"
#include "uavot/experiment.hpp"

#ifndef UAVOT_VERSION
#define UAVOT_VERSION "unknown"
#endif

namespace {

// "NXxNY", e.g. 200x200.
std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw uavot::ConfigError("--grid expects <nx>x<ny>, got '" + text + "'");
  }
  return {std::stoul(m[1].str()), std::stoul(m[2].str())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-discrete optimal transport planner for UAV cell partitioning"};
  app.set_version_flag("--version", std::string(UAVOT_VERSION));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the experiment described by an INI config");
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::size_t> seeds;
  std::optional<std::string> grid;
  std::optional<std::string> scenario;
  bool trace = false;
  run->add_option("config", config_path, "Experiment config (INI)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--seeds", seeds, "Number of user-sampling seeds per point")->check(CLI::PositiveNumber);
  run->add_option("--grid", grid, "Grid resolution <nx>x<ny>");
  run->add_option("--scenario", scenario, "Scenario to run")->check(CLI::IsMember({"1", "2", "both"}));
  run->add_flag("--trace", trace, "Dump per-iteration solver traces");

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = uavot::load_config(config_path);
    if (seeds) config.seeds = *seeds;
    if (grid) std::tie(config.grid.nx, config.grid.ny) = parse_grid(*grid);
    if (scenario) config.scenario = uavot::parse_scenario(*scenario);
    return uavot::run_experiment(config, {out_dir, trace}, std::cerr);
  } catch (const uavot::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return uavot::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
