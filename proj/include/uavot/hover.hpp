#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavot/air_channel.hpp"
#include "uavot/control_time.hpp"
#include "uavot/grid_density.hpp"
#include "uavot/partitioning.hpp"

namespace uavot::hover {

struct BandwidthSplit {
  std::vector<double> bandwidth_hz;  // per user
  double finish_time_s = 0.0;        // common to every user
};

/// Min-max split of B among users with loads u_r (bits) and spectral
/// efficiencies E_r: W_r = B (u_r / E_r) / sum_k (u_k / E_k).
BandwidthSplit optimal_bandwidth_split(std::span<const double> loads,
                                       std::span<const double> efficiencies, double bandwidth_hz);

/// Completion time when each of n users gets B / n: max_r n u_r / (B E_r).
double equal_split_finish_time(std::span<const double> loads, std::span<const double> efficiencies,
                               double bandwidth_hz);

/// Per-cell data volume u (bits) each user in that cell must receive.
class LoadField {
 public:
  explicit LoadField(std::vector<double> bits);
  static LoadField constant(std::size_t cell_count, double bits) {
    return LoadField(std::vector<double>(cell_count, bits));
  }

  std::size_t cell_count() const { return bits_.size(); }
  double operator[](std::size_t k) const { return bits_[k]; }
  std::span<const double> bits() const { return bits_; }

 private:
  std::vector<double> bits_;
};

struct HoverTime {
  double transmission_s = 0.0;
  double control_s = 0.0;
  double total() const { return transmission_s + control_s; }
};

struct HoverReport {
  std::vector<HoverTime> per_uav;
  double total() const;
  double transmission() const;
  double control() const;
};

/// Hover time of UAV i over `region`:
/// sum_k N u_k f_k dA / (B_i log2(1 + SINR_i(k))) + g(N a).
/// Throws InfeasibleError if the region holds a cell UAV i cannot serve.
HoverTime hover_time(const AreaGrid& grid, const CellSubset& region, const RadioField& radio,
                     std::size_t uav, double bandwidth_hz, const LoadField& load,
                     const ControlTimeModel& control, double users);

/// Hover time of every UAV for a full partition.
HoverReport evaluate_hover(const AreaGrid& grid, const Partition& partition,
                           const RadioField& radio, std::span<const UavNode> uavs,
                           const LoadField& load, const ControlTimeModel& control, double users);

/// Partition rule with the congestion price:
/// cost_i(k) = N u_k / (B_i log2(1 + SINR_i(k))) + g'(a_i) where UAV i serves k, +inf otherwise.
CostField congestion_cost_field(const RadioField& radio, std::span<const UavNode> uavs,
                                const LoadField& load, const ControlTimeModel& control,
                                double users, std::span<const double> masses);

struct FixedPointOptions {
  std::size_t iterations = 200;
  double tolerance = 1e-4;  // mass change regarded as settled
  std::size_t window = 10;  // trailing iterations inspected for the warning
};

struct Scenario2Result {
  Partition partition;
  HoverReport report;
  std::vector<std::vector<double>> mass_trace;  // averaged masses after each update
  std::vector<double> objective_trace;          // total hover of each visited partition
  std::size_t selected_iteration = 0;           // index into objective_trace
  std::optional<std::string> warning;
};

/// Averaged fixed-point iteration on the congestion partition rule, started
/// from the max-SINR diagram. Returns the visited partition with the lowest
/// total hover time (the last one unless an earlier one is strictly better).
Scenario2Result solve_scenario2(const AreaGrid& grid, std::span<const UavNode> uavs,
                                const RadioField& radio, const LoadField& load,
                                const ControlTimeModel& control, double users,
                                const FixedPointOptions& options = {});

struct ExhaustiveResult {
  Partition partition;
  HoverReport report;
};

/// Exact minimizer of total hover time by enumerating every assignment of
/// feasible cells. Throws SizeError beyond 10^6 assignments.
ExhaustiveResult brute_force_scenario2(const AreaGrid& grid, std::span<const UavNode> uavs,
                                       const RadioField& radio, const LoadField& load,
                                       const ControlTimeModel& control, double users);

struct SampledHover {
  double optimal_split_s = 0.0;  // sum over UAVs, min-max bandwidth split
  double equal_split_s = 0.0;    // sum over UAVs, B / n per user
};

/// Hover times for discrete users located in `user_cells`, each served by the
/// owner of its cell. Users in unowned cells are skipped.
SampledHover sampled_hover(const Partition& partition, const RadioField& radio,
                           std::span<const UavNode> uavs, std::span<const std::size_t> user_cells,
                           const LoadField& load, const ControlTimeModel& control);

}  // namespace uavot::hover
