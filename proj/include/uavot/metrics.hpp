#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavot/grid_density.hpp"
#include "uavot/partitioning.hpp"

namespace uavot {

struct SampledUser {
  double x = 0.0;
  double y = 0.0;
  std::size_t cell = 0;
};

/// N users drawn from the grid density; reproducible from the seed.
struct UserSample {
  std::uint64_t seed = 0;
  std::vector<SampledUser> users;

  std::vector<std::size_t> cells() const;
};

/// Inverse-CDF draw over cell masses, then a uniform position inside the cell.
UserSample sample_users(const AreaGrid& grid, std::size_t count, std::uint64_t seed);

/// (sum l)^2 / (N sum l^2). Throws ParameterError on empty, negative or all-zero input.
double jain_index(std::span<const double> values);

/// Mass-weighted Jain index of a per-cell field, (int L f)^2 / (int f int L^2 f),
/// over cells where `served` holds. The noise-free limit of jain_index on a large sample.
double jain_index_field(const AreaGrid& grid, std::span<const double> values,
                        const CellSubset& served);

struct UserService {
  std::vector<double> values;  // bits per user, 0 for users nobody serves
  std::size_t unserved = 0;
};

/// Service of each sampled user: the field value of its cell, or 0 if the cell is unowned.
UserService service_per_user(const Partition& partition, std::span<const double> service,
                             const UserSample& sample);

/// sum_k N L_k f_k dA over owned cells.
double total_data_service(const AreaGrid& grid, const Partition& partition,
                          std::span<const double> service, double users);

/// N a_i per UAV.
std::vector<double> users_per_cell(const Partition& partition, double users);

}  // namespace uavot
