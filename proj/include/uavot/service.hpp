#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavot/air_channel.hpp"
#include "uavot/control_time.hpp"
#include "uavot/errors.hpp"
#include "uavot/grid_density.hpp"
#include "uavot/partitioning.hpp"

namespace uavot::service {

/// Solution of the coupled fairness system T_i = tau_i - g(N w_i),
/// w_i = B_i T_i / sum_k B_k T_k.
struct FairnessSolution {
  std::vector<double> effective_time;  // T_i, seconds
  std::vector<double> target_mass;     // w_i
  double lambda = 0.0;                 // sum_k B_k T_k / N
  double users = 0.0;                  // N
};

/// Damped fixed-point iteration started from T = tau. Throws InfeasibleError
/// when a transmission time turns negative or the iteration does not settle.
FairnessSolution solve_fairness_system(std::span<const UavNode> uavs,
                                       const ControlTimeModel& control, double users);

/// cost_i(k) = -lambda log2(1 + SINR_i(k)) where UAV i serves cell k, +inf elsewhere.
CostField build_cost_field(const RadioField& radio, const FairnessSolution& fairness);

/// Kantorovich dual F(psi) = sum_i psi_i w_i + sum_k min_i (c_i(k) - psi_i) f_k dA,
/// summed over cells with at least one finite cost.
double dual_value(const AreaGrid& grid, const CostField& cost, std::span<const double> psi,
                  std::span<const double> omega);

/// dF/dpsi_i = w_i - mass of D_i(psi), with ties resolved to the lowest index.
std::vector<double> dual_gradient(const AreaGrid& grid, const CostField& cost,
                                  std::span<const double> psi, std::span<const double> omega);

struct DualTraceEntry {
  std::size_t iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct DualPotentials {
  std::vector<double> psi;
  std::vector<DualTraceEntry> trace;
};

struct DualAscentOptions {
  double rho = 1e-3;
  std::size_t max_iterations = 100000;
};

/// Raised when the ascent stalls or runs out of iterations; keeps the trace.
class DualConvergenceError : public ConvergenceError {
 public:
  DualConvergenceError(const std::string& what, std::vector<DualTraceEntry> trace)
      : ConvergenceError(what), trace_(std::move(trace)) {}
  const std::vector<DualTraceEntry>& trace() const { return trace_; }

 private:
  std::vector<DualTraceEntry> trace_;
};

/// Gradient ascent on F with step doubling and halving. Starts from psi = 0.
DualPotentials maximize_dual(const AreaGrid& grid, const CostField& cost,
                             std::span<const double> omega, const DualAscentOptions& options = {});

struct Scenario1Result {
  Partition partition;
  FairnessSolution fairness;
  DualPotentials potentials;
  std::vector<double> service;  // bits per user at each cell, 0 where unserved
};

Scenario1Result solve_scenario1(const AreaGrid& grid, std::span<const UavNode> uavs,
                                const RadioField& radio, const ControlTimeModel& control,
                                double users, const DualAscentOptions& options = {});

/// Per-user service of a fixed partition when each UAV splits the time left
/// after its own control overhead over the users it actually holds:
/// L(k) = max(0, tau_i - g(N a_i)) B_i / (N a_i) log2(1 + SINR_i(k)).
std::vector<double> baseline_service_field(const AreaGrid& grid, std::span<const UavNode> uavs,
                                           const RadioField& radio, const Partition& partition,
                                           const ControlTimeModel& control, double users);

}  // namespace uavot::service
