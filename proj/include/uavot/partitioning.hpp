#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "uavot/air_channel.hpp"
#include "uavot/grid_density.hpp"

namespace uavot {

/// Owner sentinel for cells that no UAV can serve.
inline constexpr int kInfeasible = -1;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Per-UAV, per-cell cost, UAV-major. +infinity marks a forbidden pairing.
class CostField {
 public:
  CostField(std::size_t uav_count, std::size_t cell_count, double fill = 0.0)
      : uav_count_(uav_count), cell_count_(cell_count), values_(uav_count * cell_count, fill) {}

  std::size_t uav_count() const { return uav_count_; }
  std::size_t cell_count() const { return cell_count_; }

  double operator()(std::size_t i, std::size_t k) const { return values_[i * cell_count_ + k]; }
  double& operator()(std::size_t i, std::size_t k) { return values_[i * cell_count_ + k]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * cell_count_, cell_count_);
  }

 private:
  std::size_t uav_count_;
  std::size_t cell_count_;
  std::vector<double> values_;
};

/// Assignment of every grid cell to one UAV (or kInfeasible), together with
/// the probability mass a_i of each UAV's region.
class Partition {
 public:
  Partition(const AreaGrid& grid, std::vector<int> owner, std::size_t uav_count);

  std::size_t uav_count() const { return masses_.size(); }
  std::size_t cell_count() const { return owner_.size(); }

  std::span<const int> owners() const { return owner_; }
  int owner(std::size_t k) const { return owner_[k]; }

  std::span<const double> masses() const { return masses_; }
  double mass(std::size_t i) const { return masses_[i]; }
  double infeasible_mass() const { return infeasible_mass_; }

  CellSubset region(std::size_t i) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.owner_ == b.owner_; }

 private:
  std::vector<int> owner_;
  std::vector<double> masses_;
  double infeasible_mass_ = 0.0;
};

/// Sends every feasible cell to argmin_i (cost_i(k) - offset_i), ties to the
/// lowest index. Cells outside `feasible` get kInfeasible. `offsets` may be
/// empty (all zero). Throws InfeasibleError if a feasible cell has no finite
/// cost.
Partition assign_by_min_cost(const AreaGrid& grid, const CostField& cost,
                             const CellSubset& feasible, std::span<const double> offsets = {});

/// Multiplicatively weighted max-SINR diagram: cell -> argmax_i w_i * SINR_i
/// over UAVs that meet the SINR threshold there. Equal weights give the
/// classical max-received-signal association.
Partition weighted_voronoi(const AreaGrid& grid, const RadioField& radio,
                           std::span<const double> weights);

/// CSV rows (cell_x_m, cell_y_m, uav_index); infeasible cells carry -1.
void write_partition_csv(std::ostream& os, const AreaGrid& grid, const Partition& partition);

}  // namespace uavot
