#include "uavot/grid_density.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "uavot/csv.hpp"
#include "uavot/errors.hpp"
#include "uavot/numeric.hpp"

namespace uavot {

void GridSpec::validate() const {
  if (!(width_m > 0.0) || !(height_m > 0.0) || !std::isfinite(width_m) ||
      !std::isfinite(height_m)) {
    throw ParameterError("grid: area dimensions must be positive and finite");
  }
  if (nx < 1 || ny < 1) throw ParameterError("grid: cell counts must be >= 1");
}

AreaGrid::AreaGrid(GridSpec spec, std::vector<double> weights)
    : spec_(spec), density_(std::move(weights)) {
  spec_.validate();
  if (density_.size() != spec_.cell_count()) {
    throw ParameterError("grid: density has " + std::to_string(density_.size()) +
                         " entries, expected " + std::to_string(spec_.cell_count()));
  }
  dx_ = spec_.width_m / static_cast<double>(spec_.nx);
  dy_ = spec_.height_m / static_cast<double>(spec_.ny);
  cell_area_ = dx_ * dy_;

  CompensatedSum total;
  for (double w : density_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ParameterError("grid: density weights must be finite and non-negative");
    }
    total.add(w);
  }
  const double mass = total.value() * cell_area_;
  if (!(mass > 0.0)) throw ParameterError("grid: density weights sum to zero");
  for (double& w : density_) w /= mass;
}

std::size_t CellSubset::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

AreaGrid truncated_gaussian(const GridSpec& spec, double mean_x, double mean_y, double sigma_x,
                            double sigma_y) {
  spec.validate();
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
    throw ParameterError("truncated_gaussian: standard deviations must be positive");
  }
  const double dx = spec.width_m / static_cast<double>(spec.nx);
  const double dy = spec.height_m / static_cast<double>(spec.ny);

  // Separable kernel: evaluate each axis once.
  std::vector<double> kx(spec.nx), ky(spec.ny);
  for (std::size_t i = 0; i < spec.nx; ++i) {
    const double z = ((static_cast<double>(i) + 0.5) * dx - mean_x) / sigma_x;
    kx[i] = std::exp(-0.5 * z * z);
  }
  for (std::size_t j = 0; j < spec.ny; ++j) {
    const double z = ((static_cast<double>(j) + 0.5) * dy - mean_y) / sigma_y;
    ky[j] = std::exp(-0.5 * z * z);
  }
  std::vector<double> w(spec.cell_count());
  for (std::size_t j = 0; j < spec.ny; ++j) {
    for (std::size_t i = 0; i < spec.nx; ++i) w[j * spec.nx + i] = kx[i] * ky[j];
  }
  return AreaGrid(spec, std::move(w));
}

AreaGrid uniform_density(const GridSpec& spec) {
  spec.validate();
  return AreaGrid(spec, std::vector<double>(spec.cell_count(), 1.0));
}

double measure(const AreaGrid& grid, const CellSubset& region) {
  if (region.size() != grid.cell_count()) throw ParameterError("measure: mask size mismatch");
  CompensatedSum s;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    if (region.contains(k)) s.add(grid.cell_mass(k));
  }
  return s.value();
}

double integrate_weighted(const AreaGrid& grid, const CellSubset& region,
                          std::span<const double> weight) {
  if (region.size() != grid.cell_count() || weight.size() != grid.cell_count()) {
    throw ParameterError("integrate_weighted: array size mismatch");
  }
  CompensatedSum s;
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    if (region.contains(k)) s.add(weight[k] * grid.cell_mass(k));
  }
  return s.value();
}

void write_density_csv(std::ostream& os, const AreaGrid& grid) {
  os << "x_m,y_m,f\n";
  const auto f = grid.density();
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    os << csv::real(grid.cell_x(k)) << ',' << csv::real(grid.cell_y(k)) << ',' << csv::real(f[k])
       << '\n';
  }
}

}  // namespace uavot
