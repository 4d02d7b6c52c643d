#include "uavot/partitioning.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "uavot/csv.hpp"
#include "uavot/errors.hpp"
#include "uavot/numeric.hpp"

namespace uavot {

Partition::Partition(const AreaGrid& grid, std::vector<int> owner, std::size_t uav_count)
    : owner_(std::move(owner)), masses_(uav_count, 0.0) {
  if (owner_.size() != grid.cell_count()) throw ParameterError("partition: size mismatch");
  std::vector<CompensatedSum> acc(uav_count);
  CompensatedSum lost;
  for (std::size_t k = 0; k < owner_.size(); ++k) {
    const int o = owner_[k];
    if (o == kInfeasible) {
      lost.add(grid.cell_mass(k));
    } else if (o >= 0 && static_cast<std::size_t>(o) < uav_count) {
      acc[static_cast<std::size_t>(o)].add(grid.cell_mass(k));
    } else {
      throw ParameterError("partition: owner index " + std::to_string(o) + " out of range");
    }
  }
  for (std::size_t i = 0; i < uav_count; ++i) masses_[i] = acc[i].value();
  infeasible_mass_ = lost.value();
}

CellSubset Partition::region(std::size_t i) const {
  CellSubset r(owner_.size());
  for (std::size_t k = 0; k < owner_.size(); ++k) {
    if (owner_[k] == static_cast<int>(i)) r.set(k);
  }
  return r;
}

Partition assign_by_min_cost(const AreaGrid& grid, const CostField& cost,
                             const CellSubset& feasible, std::span<const double> offsets) {
  const std::size_t m = cost.uav_count();
  const std::size_t n = grid.cell_count();
  if (cost.cell_count() != n || feasible.size() != n) {
    throw ParameterError("assign_by_min_cost: array size mismatch");
  }
  if (!offsets.empty() && offsets.size() != m) {
    throw ParameterError("assign_by_min_cost: offset vector has wrong length");
  }
  std::vector<int> owner(n, kInfeasible);
  for (std::size_t k = 0; k < n; ++k) {
    if (!feasible.contains(k)) continue;
    double best = kUnreachable;
    int arg = kInfeasible;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = cost(i, k);
      if (c == kUnreachable) continue;
      const double shifted = offsets.empty() ? c : c - offsets[i];
      if (arg == kInfeasible || shifted < best) {
        best = shifted;
        arg = static_cast<int>(i);
      }
    }
    if (arg == kInfeasible) {
      throw InfeasibleError("assign_by_min_cost: cell " + std::to_string(k) +
                            " is marked feasible but no UAV can serve it");
    }
    owner[k] = arg;
  }
  return Partition(grid, std::move(owner), m);
}

Partition weighted_voronoi(const AreaGrid& grid, const RadioField& radio,
                           std::span<const double> weights) {
  const std::size_t m = radio.uav_count();
  if (weights.size() != m) throw ParameterError("weighted_voronoi: one weight per UAV required");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParameterError("weighted_voronoi: weights must be positive and finite");
    }
  }
  CostField cost(m, grid.cell_count(), kUnreachable);
  for (std::size_t i = 0; i < m; ++i) {
    const auto sinr = radio.sinr(i);
    for (std::size_t k = 0; k < grid.cell_count(); ++k) {
      if (radio.serves(i, k)) cost(i, k) = -weights[i] * sinr[k];
    }
  }
  return assign_by_min_cost(grid, cost, radio.feasible());
}

void write_partition_csv(std::ostream& os, const AreaGrid& grid, const Partition& partition) {
  os << "cell_x_m,cell_y_m,uav_index\n";
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    os << csv::real(grid.cell_x(k)) << ',' << csv::real(grid.cell_y(k)) << ','
       << partition.owner(k) << '\n';
  }
}

}  // namespace uavot
