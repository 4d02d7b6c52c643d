#include "uavot/service.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavot/numeric.hpp"

namespace uavot::service {
namespace {

constexpr double kFairnessDamping = 0.5;
constexpr double kFairnessTolerance = 1e-9;
constexpr std::size_t kFairnessMaxSteps = 10000;

struct DualSweep {
  double value = 0.0;
  std::vector<double> masses;
};

// One pass over the cells: c-transform integral and the mass of each D_i.
DualSweep sweep(const AreaGrid& grid, const CostField& cost, std::span<const double> psi,
                std::span<const double> omega) {
  const std::size_t m = cost.uav_count();
  if (psi.size() != m || omega.size() != m) {
    throw ParameterError("dual: psi and omega must have one entry per UAV");
  }
  if (cost.cell_count() != grid.cell_count()) throw ParameterError("dual: cost/grid size mismatch");

  std::vector<CompensatedSum> mass(m);
  CompensatedSum integral;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    double best = kUnreachable;
    std::size_t arg = m;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = cost(i, k);
      if (c == kUnreachable) continue;
      const double shifted = c - psi[i];
      if (arg == m || shifted < best) {
        best = shifted;
        arg = i;
      }
    }
    if (arg == m) continue;
    const double w = grid.cell_mass(k);
    integral.add(best * w);
    mass[arg].add(w);
  }

  CompensatedSum linear;
  for (std::size_t i = 0; i < m; ++i) linear.add(psi[i] * omega[i]);
  linear.add(integral.value());

  DualSweep out;
  out.value = linear.value();
  out.masses.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.masses[i] = mass[i].value();
  return out;
}

double norm2(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x * x);
  return std::sqrt(s.value());
}

std::vector<double> step_from(std::span<const double> psi, std::span<const double> g, double eps) {
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = psi[i] + eps * g[i];
  return out;
}

}  // namespace

FairnessSolution solve_fairness_system(std::span<const UavNode> uavs,
                                       const ControlTimeModel& control, double users) {
  if (uavs.empty()) throw ParameterError("fairness: at least one UAV required");
  if (!(users > 0.0)) throw ParameterError("fairness: user count must be positive");
  control.validate();
  const std::size_t m = uavs.size();
  double tau_max = 0.0;
  for (const auto& u : uavs) {
    u.validate();
    tau_max = std::max(tau_max, u.max_hover_s);
  }

  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = uavs[i].max_hover_s;

  auto targets = [&](const std::vector<double>& times) {
    CompensatedSum total;
    for (std::size_t i = 0; i < m; ++i) total.add(uavs[i].bandwidth_hz * times[i]);
    const double z = total.value();
    if (!(z > 0.0)) {
      throw InfeasibleError("fairness: control overhead consumes every hover budget");
    }
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = uavs[i].bandwidth_hz * times[i] / z;
    return w;
  };

  bool converged = false;
  for (std::size_t step = 0; step < kFairnessMaxSteps; ++step) {
    const auto w = targets(t);
    double delta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double next = uavs[i].max_hover_s - control.time(users * w[i]);
      const double damped = (1.0 - kFairnessDamping) * t[i] + kFairnessDamping * next;
      delta = std::max(delta, std::abs(damped - t[i]));
      t[i] = damped;
    }
    if (delta <= kFairnessTolerance * tau_max) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw InfeasibleError("fairness: transmission times did not settle within " +
                          std::to_string(kFairnessMaxSteps) + " steps");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (t[i] < 0.0) {
      throw InfeasibleError("fairness: UAV " + std::to_string(i) +
                            " cannot cover its control overhead within its hover budget");
    }
  }

  FairnessSolution sol;
  sol.target_mass = targets(t);
  CompensatedSum total;
  for (std::size_t i = 0; i < m; ++i) total.add(uavs[i].bandwidth_hz * t[i]);
  sol.lambda = total.value() / users;
  sol.effective_time = std::move(t);
  sol.users = users;
  return sol;
}

CostField build_cost_field(const RadioField& radio, const FairnessSolution& fairness) {
  const std::size_t m = radio.uav_count();
  if (fairness.target_mass.size() != m) throw ParameterError("cost field: UAV count mismatch");
  CostField cost(m, radio.cell_count(), kUnreachable);
  for (std::size_t i = 0; i < m; ++i) {
    const auto eff = radio.efficiency(i);
    for (std::size_t k = 0; k < radio.cell_count(); ++k) {
      if (radio.serves(i, k)) cost(i, k) = -fairness.lambda * eff[k];
    }
  }
  return cost;
}

double dual_value(const AreaGrid& grid, const CostField& cost, std::span<const double> psi,
                  std::span<const double> omega) {
  return sweep(grid, cost, psi, omega).value;
}

std::vector<double> dual_gradient(const AreaGrid& grid, const CostField& cost,
                                  std::span<const double> psi, std::span<const double> omega) {
  auto s = sweep(grid, cost, psi, omega);
  std::vector<double> g(omega.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = omega[i] - s.masses[i];
  return g;
}

DualPotentials maximize_dual(const AreaGrid& grid, const CostField& cost,
                             std::span<const double> omega, const DualAscentOptions& options) {
  if (!(options.rho > 0.0)) throw ParameterError("dual ascent: rho must be positive");
  const std::size_t m = cost.uav_count();

  // sum_i g_i = 1 - feasible mass, so ||g|| >= infeasible mass / sqrt(M)
  // everywhere; past rho sqrt(M) the stopping rule can never fire.
  {
    const std::vector<double> zero(m, 0.0);
    const auto s = sweep(grid, cost, zero, omega);
    double served = 0.0;
    for (double a : s.masses) served += a;
    const double lost = 1.0 - served;
    if (lost > options.rho * std::sqrt(static_cast<double>(m))) {
      throw InfeasibleError("dual ascent: mass " + std::to_string(lost) +
                            " lies in cells no UAV can serve");
    }
  }

  DualPotentials out;
  out.psi.assign(m, 0.0);
  double f = dual_value(grid, cost, out.psi, omega);

  for (std::size_t iter = 0;; ++iter) {
    const auto g = dual_gradient(grid, cost, out.psi, omega);
    const double gn = norm2(g);
    if (gn <= options.rho) {
      out.trace.push_back({iter, f, gn, 0.0});
      return out;
    }
    if (iter >= options.max_iterations) {
      throw DualConvergenceError("dual ascent: no convergence after " +
                                     std::to_string(options.max_iterations) + " iterations",
                                 std::move(out.trace));
    }

    double eps = 1.0;
    auto trial = step_from(out.psi, g, eps);
    double f_trial = dual_value(grid, cost, trial, omega);
    if (f_trial > f) {
      for (;;) {
        auto longer = step_from(out.psi, g, 2.0 * eps);
        const double f_longer = dual_value(grid, cost, longer, omega);
        if (!(f_longer > f_trial)) break;
        eps *= 2.0;
        trial = std::move(longer);
        f_trial = f_longer;
      }
    } else {
      while (!(f_trial > f)) {
        eps *= 0.5;
        trial = step_from(out.psi, g, eps);
        if (trial == out.psi) {
          throw DualConvergenceError(
              "dual ascent: step underflow at gradient norm " + std::to_string(gn) +
                  " (grid may be too coarse to meet the mass targets within rho)",
              std::move(out.trace));
        }
        f_trial = dual_value(grid, cost, trial, omega);
      }
    }
    out.trace.push_back({iter, f, gn, eps});
    out.psi = std::move(trial);
    f = f_trial;
  }
}

Scenario1Result solve_scenario1(const AreaGrid& grid, std::span<const UavNode> uavs,
                                const RadioField& radio, const ControlTimeModel& control,
                                double users, const DualAscentOptions& options) {
  if (radio.uav_count() != uavs.size() || radio.cell_count() != grid.cell_count()) {
    throw ParameterError("scenario 1: radio field does not match grid and UAV list");
  }
  auto fairness = solve_fairness_system(uavs, control, users);
  const auto cost = build_cost_field(radio, fairness);
  auto potentials = maximize_dual(grid, cost, fairness.target_mass, options);
  auto partition = assign_by_min_cost(grid, cost, radio.feasible(), potentials.psi);

  std::vector<double> service(grid.cell_count(), 0.0);
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    const int o = partition.owner(k);
    if (o == kInfeasible) continue;
    service[k] = fairness.lambda * radio.efficiency(static_cast<std::size_t>(o))[k];
  }
  return Scenario1Result{std::move(partition), std::move(fairness), std::move(potentials),
                         std::move(service)};
}

std::vector<double> baseline_service_field(const AreaGrid& grid, std::span<const UavNode> uavs,
                                           const RadioField& radio, const Partition& partition,
                                           const ControlTimeModel& control, double users) {
  const std::size_t m = uavs.size();
  if (partition.uav_count() != m || radio.uav_count() != m) {
    throw ParameterError("baseline service: UAV count mismatch");
  }
  std::vector<double> per_bit(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = partition.mass(i);
    if (!(a > 0.0)) continue;
    const double t = std::max(0.0, uavs[i].max_hover_s - control.time(users * a));
    per_bit[i] = t * uavs[i].bandwidth_hz / (users * a);
  }
  std::vector<double> service(grid.cell_count(), 0.0);
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    const int o = partition.owner(k);
    if (o == kInfeasible) continue;
    const auto i = static_cast<std::size_t>(o);
    service[k] = per_bit[i] * radio.efficiency(i)[k];
  }
  return service;
}

}  // namespace uavot::service
