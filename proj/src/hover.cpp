#include "uavot/hover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uavot/errors.hpp"
#include "uavot/numeric.hpp"

namespace uavot::hover {
namespace {

constexpr double kStrictImprovement = 1e-12;
constexpr std::size_t kBruteForceLimit = 1'000'000;

void check_users(double users) {
  if (!(users > 0.0)) throw ParameterError("hover: user count must be positive");
}

// Cells carrying users that no UAV reaches make complete service impossible.
void require_full_coverage(const AreaGrid& grid, const RadioField& radio) {
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    if (!radio.feasible().contains(k) && grid.cell_mass(k) > 0.0) bad.push_back(k);
  }
  if (bad.empty()) return;
  std::ostringstream os;
  os << "scenario 2: " << bad.size() << " populated cell(s) below the SINR threshold of every UAV:";
  const std::size_t shown = std::min<std::size_t>(bad.size(), 10);
  for (std::size_t j = 0; j < shown; ++j) os << ' ' << bad[j];
  if (shown < bad.size()) os << " ...";
  throw InfeasibleError(os.str());
}

void check_inputs(const AreaGrid& grid, std::span<const UavNode> uavs, const RadioField& radio,
                  const LoadField& load) {
  if (uavs.empty()) throw ParameterError("hover: at least one UAV required");
  if (radio.uav_count() != uavs.size() || radio.cell_count() != grid.cell_count() ||
      load.cell_count() != grid.cell_count()) {
    throw ParameterError("hover: grid, radio field, load and UAV list disagree in size");
  }
}

}  // namespace

BandwidthSplit optimal_bandwidth_split(std::span<const double> loads,
                                       std::span<const double> efficiencies, double bandwidth_hz) {
  if (loads.empty() || loads.size() != efficiencies.size()) {
    throw ParameterError("bandwidth split: need matching, non-empty load and efficiency lists");
  }
  if (!(bandwidth_hz > 0.0)) throw ParameterError("bandwidth split: bandwidth must be positive");
  std::vector<double> demand(loads.size());
  CompensatedSum total;
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (!(loads[r] >= 0.0)) throw ParameterError("bandwidth split: loads must be non-negative");
    if (loads[r] == 0.0) continue;
    if (!(efficiencies[r] > 0.0)) {
      throw InfeasibleError("bandwidth split: user " + std::to_string(r) +
                            " has data to receive but zero spectral efficiency");
    }
    demand[r] = loads[r] / efficiencies[r];
    total.add(demand[r]);
  }
  BandwidthSplit out;
  out.bandwidth_hz.assign(loads.size(), 0.0);
  const double z = total.value();
  if (z == 0.0) {
    // Nothing to send: any split finishes at once; share evenly.
    std::fill(out.bandwidth_hz.begin(), out.bandwidth_hz.end(),
              bandwidth_hz / static_cast<double>(loads.size()));
    return out;
  }
  for (std::size_t r = 0; r < loads.size(); ++r) out.bandwidth_hz[r] = bandwidth_hz * demand[r] / z;
  out.finish_time_s = z / bandwidth_hz;
  return out;
}

double equal_split_finish_time(std::span<const double> loads, std::span<const double> efficiencies,
                               double bandwidth_hz) {
  if (loads.empty() || loads.size() != efficiencies.size()) {
    throw ParameterError("equal split: need matching, non-empty load and efficiency lists");
  }
  if (!(bandwidth_hz > 0.0)) throw ParameterError("equal split: bandwidth must be positive");
  const double share = bandwidth_hz / static_cast<double>(loads.size());
  double worst = 0.0;
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0.0) continue;
    if (!(efficiencies[r] > 0.0)) {
      throw InfeasibleError("equal split: user with zero spectral efficiency");
    }
    worst = std::max(worst, loads[r] / (share * efficiencies[r]));
  }
  return worst;
}

LoadField::LoadField(std::vector<double> bits) : bits_(std::move(bits)) {
  for (double b : bits_) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw ParameterError("load field: loads must be finite and >= 0");
  }
}

double HoverReport::total() const { return transmission() + control(); }

double HoverReport::transmission() const {
  CompensatedSum s;
  for (const auto& h : per_uav) s.add(h.transmission_s);
  return s.value();
}

double HoverReport::control() const {
  CompensatedSum s;
  for (const auto& h : per_uav) s.add(h.control_s);
  return s.value();
}

HoverTime hover_time(const AreaGrid& grid, const CellSubset& region, const RadioField& radio,
                     std::size_t uav, double bandwidth_hz, const LoadField& load,
                     const ControlTimeModel& control, double users) {
  check_users(users);
  if (!(bandwidth_hz > 0.0)) throw ParameterError("hover: bandwidth must be positive");
  if (region.size() != grid.cell_count() || load.cell_count() != grid.cell_count()) {
    throw ParameterError("hover: region/load size mismatch");
  }
  const auto eff = radio.efficiency(uav);
  CompensatedSum tx;
  CompensatedSum mass;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    if (!region.contains(k)) continue;
    if (!radio.serves(uav, k)) {
      throw InfeasibleError("hover: cell " + std::to_string(k) + " is out of reach of UAV " +
                            std::to_string(uav));
    }
    const double w = grid.cell_mass(k);
    mass.add(w);
    if (load[k] == 0.0 || w == 0.0) continue;
    tx.add(users * load[k] * w / (bandwidth_hz * eff[k]));
  }
  return HoverTime{tx.value(), control.time(users * mass.value())};
}

HoverReport evaluate_hover(const AreaGrid& grid, const Partition& partition,
                           const RadioField& radio, std::span<const UavNode> uavs,
                           const LoadField& load, const ControlTimeModel& control, double users) {
  check_inputs(grid, uavs, radio, load);
  check_users(users);
  const std::size_t m = uavs.size();
  std::vector<CompensatedSum> tx(m);
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    const int o = partition.owner(k);
    if (o == kInfeasible) continue;
    const auto i = static_cast<std::size_t>(o);
    if (!radio.serves(i, k)) {
      throw InfeasibleError("hover: cell " + std::to_string(k) + " is out of reach of UAV " +
                            std::to_string(i));
    }
    const double w = grid.cell_mass(k);
    if (load[k] == 0.0 || w == 0.0) continue;
    tx[i].add(users * load[k] * w / (uavs[i].bandwidth_hz * radio.efficiency(i)[k]));
  }
  HoverReport report;
  report.per_uav.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    report.per_uav[i] = HoverTime{tx[i].value(), control.time(users * partition.mass(i))};
  }
  return report;
}

CostField congestion_cost_field(const RadioField& radio, std::span<const UavNode> uavs,
                                const LoadField& load, const ControlTimeModel& control,
                                double users, std::span<const double> masses) {
  const std::size_t m = radio.uav_count();
  if (uavs.size() != m || masses.size() != m || load.cell_count() != radio.cell_count()) {
    throw ParameterError("congestion cost: size mismatch");
  }
  CostField cost(m, radio.cell_count(), kUnreachable);
  for (std::size_t i = 0; i < m; ++i) {
    const double price = control.marginal(masses[i], users);
    const auto eff = radio.efficiency(i);
    for (std::size_t k = 0; k < radio.cell_count(); ++k) {
      if (!radio.serves(i, k)) continue;
      cost(i, k) = users * load[k] / (uavs[i].bandwidth_hz * eff[k]) + price;
    }
  }
  return cost;
}

Scenario2Result solve_scenario2(const AreaGrid& grid, std::span<const UavNode> uavs,
                                const RadioField& radio, const LoadField& load,
                                const ControlTimeModel& control, double users,
                                const FixedPointOptions& options) {
  check_inputs(grid, uavs, radio, load);
  check_users(users);
  control.validate();
  if (options.iterations < 1) throw ParameterError("scenario 2: at least one iteration required");
  require_full_coverage(grid, radio);

  const std::size_t m = uavs.size();
  const std::size_t n = grid.cell_count();

  Partition current = weighted_voronoi(grid, radio, std::vector<double>(m, 1.0));
  auto objective = [&](const Partition& p) {
    return evaluate_hover(grid, p, radio, uavs, load, control, users).total();
  };

  Scenario2Result out{current, {}, {}, {}, 0, std::nullopt};
  out.objective_trace.push_back(objective(current));
  Partition best = current;
  std::size_t best_index = 0;

  // share = 1 - phi: running average of each UAV's region indicator.
  std::vector<double> share(m * n, 0.0);
  for (std::size_t t = 1; t <= options.iterations; ++t) {
    const double keep = 1.0 - 1.0 / static_cast<double>(t);
    const double fresh = 1.0 / static_cast<double>(t);
    std::vector<double> masses(m);
    for (std::size_t i = 0; i < m; ++i) {
      CompensatedSum a;
      for (std::size_t k = 0; k < n; ++k) {
        double& s = share[i * n + k];
        s = keep * s + (current.owner(k) == static_cast<int>(i) ? fresh : 0.0);
        a.add(s * grid.cell_mass(k));
      }
      masses[i] = a.value();
    }
    out.mass_trace.push_back(masses);

    const auto cost = congestion_cost_field(radio, uavs, load, control, users, masses);
    current = assign_by_min_cost(grid, cost, radio.feasible());
    const double obj = objective(current);
    if (t < options.iterations && obj < out.objective_trace[best_index]) {
      best = current;
      best_index = t;
    }
    out.objective_trace.push_back(obj);
  }

  const std::size_t last = out.objective_trace.size() - 1;
  const double last_obj = out.objective_trace[last];
  const double best_obj = out.objective_trace[best_index];
  if (best_obj < last_obj - kStrictImprovement * std::abs(last_obj)) {
    out.partition = std::move(best);
    out.selected_iteration = best_index;
  } else {
    out.partition = std::move(current);
    out.selected_iteration = last;
  }
  out.report = evaluate_hover(grid, out.partition, radio, uavs, load, control, users);

  const auto& trace = out.mass_trace;
  if (trace.size() >= 2) {
    const std::size_t from = trace.size() > options.window ? trace.size() - options.window : 1;
    double drift = 0.0;
    for (std::size_t j = std::max<std::size_t>(from, 1); j < trace.size(); ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        drift = std::max(drift, std::abs(trace[j][i] - trace[j - 1][i]));
      }
    }
    if (drift > options.tolerance) {
      std::ostringstream os;
      os << "scenario 2: region masses still moving by " << drift << " over the last "
         << options.window << " iterations";
      out.warning = os.str();
    }
  }
  return out;
}

ExhaustiveResult brute_force_scenario2(const AreaGrid& grid, std::span<const UavNode> uavs,
                                       const RadioField& radio, const LoadField& load,
                                       const ControlTimeModel& control, double users) {
  check_inputs(grid, uavs, radio, load);
  check_users(users);
  require_full_coverage(grid, radio);
  const std::size_t m = uavs.size();
  const std::size_t n = grid.cell_count();

  double count = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    count *= static_cast<double>(m);
    if (count > static_cast<double>(kBruteForceLimit)) {
      throw SizeError("brute force: more than 10^6 assignments");
    }
  }

  // Per cell: the UAVs able to serve it, and each option's transmission term.
  std::vector<std::vector<int>> options(n);
  std::vector<std::vector<double>> tx(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!radio.serves(i, k)) continue;
      options[k].push_back(static_cast<int>(i));
      const double w = grid.cell_mass(k);
      const double t = (load[k] == 0.0 || w == 0.0)
                           ? 0.0
                           : users * load[k] * w / (uavs[i].bandwidth_hz * radio.efficiency(i)[k]);
      tx[k].push_back(t);
    }
    if (options[k].empty()) {
      options[k].push_back(kInfeasible);
      tx[k].push_back(0.0);
    }
  }

  std::vector<std::size_t> digit(n, 0);
  std::vector<int> owner(n);
  std::vector<int> best_owner;
  double best = kUnreachable;
  std::vector<double> trans(m);
  std::vector<double> mass(m);
  for (;;) {
    std::fill(trans.begin(), trans.end(), 0.0);
    std::fill(mass.begin(), mass.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const int o = options[k][digit[k]];
      owner[k] = o;
      if (o == kInfeasible) continue;
      trans[static_cast<std::size_t>(o)] += tx[k][digit[k]];
      mass[static_cast<std::size_t>(o)] += grid.cell_mass(k);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += trans[i] + control.time(users * mass[i]);
    if (total < best) {
      best = total;
      best_owner = owner;
    }
    std::size_t k = 0;
    while (k < n && ++digit[k] == options[k].size()) digit[k++] = 0;
    if (k == n) break;
  }

  Partition partition(grid, std::move(best_owner), m);
  auto report = evaluate_hover(grid, partition, radio, uavs, load, control, users);
  return ExhaustiveResult{std::move(partition), std::move(report)};
}

SampledHover sampled_hover(const Partition& partition, const RadioField& radio,
                           std::span<const UavNode> uavs, std::span<const std::size_t> user_cells,
                           const LoadField& load, const ControlTimeModel& control) {
  const std::size_t m = uavs.size();
  std::vector<std::vector<double>> loads(m);
  std::vector<std::vector<double>> effs(m);
  for (std::size_t k : user_cells) {
    const int o = partition.owner(k);
    if (o == kInfeasible) continue;
    const auto i = static_cast<std::size_t>(o);
    loads[i].push_back(load[k]);
    effs[i].push_back(radio.efficiency(i)[k]);
  }
  SampledHover out;
  for (std::size_t i = 0; i < m; ++i) {
    if (loads[i].empty()) continue;
    const double n = static_cast<double>(loads[i].size());
    const double g = control.time(n);
    out.optimal_split_s +=
        optimal_bandwidth_split(loads[i], effs[i], uavs[i].bandwidth_hz).finish_time_s + g;
    out.equal_split_s += equal_split_finish_time(loads[i], effs[i], uavs[i].bandwidth_hz) + g;
  }
  return out;
}

}  // namespace uavot::hover
