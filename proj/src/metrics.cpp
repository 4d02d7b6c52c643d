#include "uavot/metrics.hpp"

#include <algorithm>
#include <random>

#include "uavot/errors.hpp"
#include "uavot/numeric.hpp"

namespace uavot {
namespace {

// Uniform double in [0, 1) from the top 53 bits; std::uniform_real_distribution
// is not specified bit-for-bit across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<std::size_t> UserSample::cells() const {
  std::vector<std::size_t> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.cell);
  return out;
}

UserSample sample_users(const AreaGrid& grid, std::size_t count, std::uint64_t seed) {
  std::vector<double> cdf(grid.cell_count());
  CompensatedSum run;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    run.add(grid.cell_mass(k));
    cdf[k] = run.value();
  }
  const double total = cdf.back();

  std::mt19937_64 rng(seed);
  UserSample sample;
  sample.seed = seed;
  sample.users.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double r = unit(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    if (it == cdf.end()) --it;
    auto k = static_cast<std::size_t>(it - cdf.begin());
    // Skip zero-mass cells that share a CDF value with their predecessor.
    while (grid.cell_mass(k) == 0.0 && k + 1 < cdf.size()) ++k;
    const std::size_t ix = k % grid.spec().nx;
    const std::size_t iy = k / grid.spec().nx;
    const double x = (static_cast<double>(ix) + unit(rng)) * grid.dx();
    const double y = (static_cast<double>(iy) + unit(rng)) * grid.dy();
    sample.users.push_back({x, y, k});
  }
  return sample;
}

double jain_index(std::span<const double> values) {
  if (values.empty()) throw ParameterError("jain: no values");
  CompensatedSum s;
  CompensatedSum s2;
  for (double v : values) {
    if (!(v >= 0.0)) throw ParameterError("jain: values must be non-negative");
    s.add(v);
    s2.add(v * v);
  }
  if (s2.value() == 0.0) throw ParameterError("jain: undefined for an all-zero vector");
  const double n = static_cast<double>(values.size());
  return std::clamp(s.value() * s.value() / (n * s2.value()), 1.0 / n, 1.0);
}

double jain_index_field(const AreaGrid& grid, std::span<const double> values,
                        const CellSubset& served) {
  if (values.size() != grid.cell_count() || served.size() != grid.cell_count()) {
    throw ParameterError("jain field: size mismatch");
  }
  CompensatedSum m;
  CompensatedSum s;
  CompensatedSum s2;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    if (!served.contains(k)) continue;
    const double w = grid.cell_mass(k);
    m.add(w);
    s.add(w * values[k]);
    s2.add(w * values[k] * values[k]);
  }
  if (s2.value() == 0.0) throw ParameterError("jain field: undefined for an all-zero field");
  return std::min(1.0, s.value() * s.value() / (m.value() * s2.value()));
}

UserService service_per_user(const Partition& partition, std::span<const double> service,
                             const UserSample& sample) {
  if (service.size() != partition.cell_count()) {
    throw ParameterError("service per user: field size mismatch");
  }
  UserService out;
  out.values.reserve(sample.users.size());
  for (const auto& u : sample.users) {
    if (partition.owner(u.cell) == kInfeasible) {
      out.values.push_back(0.0);
      ++out.unserved;
    } else {
      out.values.push_back(service[u.cell]);
    }
  }
  return out;
}

double total_data_service(const AreaGrid& grid, const Partition& partition,
                          std::span<const double> service, double users) {
  if (service.size() != grid.cell_count() || partition.cell_count() != grid.cell_count()) {
    throw ParameterError("total service: size mismatch");
  }
  CompensatedSum s;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    if (partition.owner(k) == kInfeasible) continue;
    s.add(service[k] * grid.cell_mass(k));
  }
  return users * s.value();
}

std::vector<double> users_per_cell(const Partition& partition, double users) {
  std::vector<double> out(partition.uav_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = users * partition.mass(i);
  return out;
}

}  // namespace uavot
