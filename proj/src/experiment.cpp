#include "uavot/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "uavot/csv.hpp"
#include "uavot/errors.hpp"
#include "uavot/metrics.hpp"

#ifndef UAVOT_VERSION
#define UAVOT_VERSION "unknown"
#endif

namespace uavot {
namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.imbue(std::locale::classic());
  return os;
}

void write_hover_csv(const std::filesystem::path& path, const hover::HoverReport& report) {
  auto os = open_csv(path);
  os << "uav,transmission_s,control_s,total_s\n";
  for (std::size_t i = 0; i < report.per_uav.size(); ++i) {
    const auto& h = report.per_uav[i];
    os << i << ',' << csv::real(h.transmission_s) << ',' << csv::real(h.control_s) << ','
       << csv::real(h.total()) << '\n';
  }
}

void write_dual_trace(const std::filesystem::path& path,
                      const std::vector<service::DualTraceEntry>& trace) {
  auto os = open_csv(path);
  os << "iter,F,grad_norm,step\n";
  for (const auto& e : trace) {
    os << e.iteration << ',' << csv::real(e.value) << ',' << csv::real(e.grad_norm) << ','
       << csv::real(e.step) << '\n';
  }
}

void write_fixed_point_trace(const std::filesystem::path& path, const hover::Scenario2Result& r) {
  auto os = open_csv(path);
  os << "iter,objective,mass_delta,step\n";
  os << 0 << ',' << csv::real(r.objective_trace.front()) << ",,\n";
  for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
    os << t << ',' << csv::real(r.objective_trace[t]) << ',';
    if (t >= 2) {
      double delta = 0.0;
      const auto& now = r.mass_trace[t - 1];
      const auto& before = r.mass_trace[t - 2];
      for (std::size_t i = 0; i < now.size(); ++i) delta = std::max(delta, std::abs(now[i] - before[i]));
      os << csv::real(delta);
    }
    os << ',' << csv::real(1.0 / static_cast<double>(t)) << '\n';
  }
}

void write_partition(const std::filesystem::path& path, const AreaGrid& grid, const Partition& p) {
  auto os = open_csv(path);
  write_partition_csv(os, grid, p);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

PointOutcome evaluate_point(const ExperimentConfig& config) {
  config.validate();
  auto grid = make_density(config);
  auto uavs = make_uavs(config);
  auto radio = compute_radio_field(grid, uavs, config.channel);
  const ControlTimeModel control{config.alpha};
  const auto users = static_cast<double>(config.users);
  const std::vector<double> weights =
      config.voronoi_weights.empty() ? std::vector<double>(uavs.size(), 1.0) : config.voronoi_weights;

  std::vector<std::uint64_t> seeds;
  std::vector<UserSample> samples;
  for (std::size_t s = 0; s < config.seeds; ++s) {
    seeds.push_back(config.base_seed + s);
    samples.push_back(sample_users(grid, config.users, seeds.back()));
  }

  std::optional<Scenario1Outcome> s1;
  if (config.scenario != ScenarioSelect::two) {
    auto proposed = service::solve_scenario1(grid, uavs, radio, control, users,
                                             {config.rho, config.max_iterations});
    auto voronoi = weighted_voronoi(grid, radio, weights);
    auto vservice = service::baseline_service_field(grid, uavs, radio, voronoi, control, users);
    const double tp = total_data_service(grid, proposed.partition, proposed.service, users);
    const double tv = total_data_service(grid, voronoi, vservice, users);
    std::vector<double> jp;
    std::vector<double> jv;
    for (const auto& sample : samples) {
      jp.push_back(jain_index(service_per_user(proposed.partition, proposed.service, sample).values));
      jv.push_back(jain_index(service_per_user(voronoi, vservice, sample).values));
    }
    s1.emplace(Scenario1Outcome{std::move(proposed), std::move(voronoi), std::move(vservice), tp, tv,
                                std::move(jp), std::move(jv)});
  }

  std::optional<Scenario2Outcome> s2;
  if (config.scenario != ScenarioSelect::one) {
    const auto load = hover::LoadField::constant(grid.cell_count(), config.load_bits);
    hover::FixedPointOptions fp;
    fp.iterations = config.fixed_point_iterations;
    auto proposed = hover::solve_scenario2(grid, uavs, radio, load, control, users, fp);
    auto voronoi = weighted_voronoi(grid, radio, weights);
    auto vreport = hover::evaluate_hover(grid, voronoi, radio, uavs, load, control, users);
    std::vector<hover::SampledHover> sp;
    std::vector<hover::SampledHover> sv;
    for (const auto& sample : samples) {
      const auto cells = sample.cells();
      sp.push_back(hover::sampled_hover(proposed.partition, radio, uavs, cells, load, control));
      sv.push_back(hover::sampled_hover(voronoi, radio, uavs, cells, load, control));
    }
    s2.emplace(Scenario2Outcome{std::move(proposed), std::move(voronoi), std::move(vreport),
                                std::move(sp), std::move(sv)});
  }

  return PointOutcome{std::move(grid), std::move(uavs), std::move(radio), std::move(seeds),
                      std::move(s1), std::move(s2)};
}

std::vector<MetricRow> summarize(const PointOutcome& o) {
  std::vector<MetricRow> rows;
  auto fixed = [&](const std::string& name, double v) { rows.push_back({name, std::nullopt, false, v}); };
  auto sampled = [&](const std::string& name, const std::vector<double>& v) {
    for (std::size_t s = 0; s < v.size(); ++s) rows.push_back({name, o.seeds[s], false, v[s]});
    rows.push_back({name, std::nullopt, true, mean(v)});
  };

  if (o.s1) {
    const auto& r = *o.s1;
    const auto& sol = r.proposed;
    double residual = 0.0;
    for (std::size_t i = 0; i < sol.partition.uav_count(); ++i) {
      residual = std::max(residual, std::abs(sol.partition.mass(i) - sol.fairness.target_mass[i]));
    }
    CellSubset owned_p(o.grid.cell_count());
    CellSubset owned_v(o.grid.cell_count());
    for (std::size_t k = 0; k < o.grid.cell_count(); ++k) {
      owned_p.set(k, sol.partition.owner(k) != kInfeasible);
      owned_v.set(k, r.voronoi.owner(k) != kInfeasible);
    }
    fixed("s1_lambda", sol.fairness.lambda);
    fixed("s1_iterations", static_cast<double>(sol.potentials.trace.size() - 1));
    fixed("s1_max_mass_residual", residual);
    fixed("s1_infeasible_mass", sol.partition.infeasible_mass());
    fixed("s1_total_service_proposed", r.total_service_proposed);
    fixed("s1_total_service_voronoi", r.total_service_voronoi);
    fixed("s1_jain_field_proposed", jain_index_field(o.grid, sol.service, owned_p));
    fixed("s1_jain_field_voronoi", jain_index_field(o.grid, r.voronoi_service, owned_v));
    sampled("s1_jain_proposed", r.jain_proposed);
    sampled("s1_jain_voronoi", r.jain_voronoi);
  }

  if (o.s2) {
    const auto& r = *o.s2;
    fixed("s2_hover_proposed", r.proposed.report.total());
    fixed("s2_hover_voronoi", r.voronoi_report.total());
    fixed("s2_transmission_proposed", r.proposed.report.transmission());
    fixed("s2_control_proposed", r.proposed.report.control());
    fixed("s2_selected_iteration", static_cast<double>(r.proposed.selected_iteration));
    std::vector<double> opt_p;
    std::vector<double> eq_p;
    std::vector<double> opt_v;
    std::vector<double> eq_v;
    std::vector<double> bw_gain;
    std::vector<double> combined;
    for (std::size_t s = 0; s < r.sampled_proposed.size(); ++s) {
      const auto& p = r.sampled_proposed[s];
      const auto& v = r.sampled_voronoi[s];
      opt_p.push_back(p.optimal_split_s);
      eq_p.push_back(p.equal_split_s);
      opt_v.push_back(v.optimal_split_s);
      eq_v.push_back(v.equal_split_s);
      bw_gain.push_back(1.0 - p.optimal_split_s / p.equal_split_s);
      combined.push_back(1.0 - p.optimal_split_s / v.equal_split_s);
    }
    sampled("s2_hover_optimal_bw_proposed", opt_p);
    sampled("s2_hover_equal_bw_proposed", eq_p);
    sampled("s2_hover_optimal_bw_voronoi", opt_v);
    sampled("s2_hover_equal_bw_voronoi", eq_v);
    sampled("s2_bw_reduction", bw_gain);
    sampled("s2_combined_reduction", combined);
  }
  return rows;
}

int run_experiment(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  try {
    config.validate();
    std::filesystem::create_directories(options.out_dir);
    {
      auto manifest = open_csv(options.out_dir / "manifest.ini");
      write_config(manifest, config);
      manifest << "\n[manifest]\nversion = " << UAVOT_VERSION << '\n';
    }

    auto metrics = open_csv(options.out_dir / "metrics.csv");
    metrics << "experiment_id,sweep_var,sweep_value,seed,metric,value\n";
    const auto points = config.points();
    for (std::size_t p = 0; p < points.size(); ++p) {
      const double value = points[p];
      const std::string tag = "_p" + std::to_string(p);
      const auto point_cfg = config.at(value);
      log << "point " << p + 1 << '/' << points.size();
      if (config.sweep != SweepVariable::none) log << ' ' << to_string(config.sweep) << '=' << value;
      log << '\n';

      PointOutcome outcome = [&] {
        try {
          return evaluate_point(point_cfg);
        } catch (const service::DualConvergenceError& e) {
          if (options.trace) write_dual_trace(options.out_dir / ("trace_s1" + tag + ".csv"), e.trace());
          throw;
        }
      }();

      const std::string sweep_value = std::isnan(value) ? "" : csv::real(value);
      for (const auto& row : summarize(outcome)) {
        metrics << config.experiment_id << ',' << to_string(config.sweep) << ',' << sweep_value << ',';
        if (row.mean) {
          metrics << "mean";
        } else if (row.seed) {
          metrics << *row.seed;
        } else {
          metrics << "all";
        }
        metrics << ',' << row.metric << ',' << csv::real(row.value) << '\n';
      }

      {
        auto os = open_csv(options.out_dir / ("density" + tag + ".csv"));
        write_density_csv(os, outcome.grid);
      }
      if (outcome.s1) {
        write_partition(options.out_dir / ("partition_s1_proposed" + tag + ".csv"), outcome.grid,
                        outcome.s1->proposed.partition);
        write_partition(options.out_dir / ("partition_s1_voronoi" + tag + ".csv"), outcome.grid,
                        outcome.s1->voronoi);
        if (options.trace) {
          write_dual_trace(options.out_dir / ("trace_s1" + tag + ".csv"),
                           outcome.s1->proposed.potentials.trace);
        }
      }
      if (outcome.s2) {
        const auto& s2 = *outcome.s2;
        if (s2.proposed.warning) log << "warning: " << *s2.proposed.warning << '\n';
        write_partition(options.out_dir / ("partition_s2_proposed" + tag + ".csv"), outcome.grid,
                        s2.proposed.partition);
        write_partition(options.out_dir / ("partition_s2_voronoi" + tag + ".csv"), outcome.grid,
                        s2.voronoi);
        write_hover_csv(options.out_dir / ("hover_s2_proposed" + tag + ".csv"), s2.proposed.report);
        write_hover_csv(options.out_dir / ("hover_s2_voronoi" + tag + ".csv"), s2.voronoi_report);
        if (options.trace) {
          write_fixed_point_trace(options.out_dir / ("trace_s2" + tag + ".csv"), s2.proposed);
        }
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    log << "parameter error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    log << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConvergenceError& e) {
    log << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  }
}

}  // namespace uavot
