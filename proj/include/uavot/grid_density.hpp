#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace uavot {

/// Rectangular service area [0, width] x [0, height] cut into nx * ny equal cells.
struct GridSpec {
  double width_m = 1000.0;
  double height_m = 1000.0;
  std::size_t nx = 200;
  std::size_t ny = 200;

  void validate() const;
  std::size_t cell_count() const { return nx * ny; }
};

/// A discretized service area carrying a user density f (1/m^2).
///
/// Cells are stored row-major: index k = iy * nx + ix, with the cell center at
/// ((ix + 0.5) * dx, (iy + 0.5) * dy). Every integral over the area uses the
/// midpoint rule on these centers, so the density is normalized such that
/// sum_k f_k * cell_area == 1 on the grid itself.
class AreaGrid {
 public:
  /// Takes a non-negative, not identically zero weight per cell and rescales
  /// it into a probability density on the grid.
  AreaGrid(GridSpec spec, std::vector<double> weights);

  const GridSpec& spec() const { return spec_; }
  std::size_t cell_count() const { return density_.size(); }
  double cell_area() const { return cell_area_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }

  double cell_x(std::size_t k) const { return (static_cast<double>(k % spec_.nx) + 0.5) * dx_; }
  double cell_y(std::size_t k) const { return (static_cast<double>(k / spec_.nx) + 0.5) * dy_; }

  std::span<const double> density() const { return density_; }
  /// Probability mass f_k * cell_area of one cell.
  double cell_mass(std::size_t k) const { return density_[k] * cell_area_; }

 private:
  GridSpec spec_;
  double dx_;
  double dy_;
  double cell_area_;
  std::vector<double> density_;
};

/// Membership mask over grid cells.
class CellSubset {
 public:
  explicit CellSubset(std::size_t cell_count, bool value = false)
      : mask_(cell_count, value ? 1 : 0) {}

  static CellSubset all(std::size_t cell_count) { return CellSubset(cell_count, true); }

  std::size_t size() const { return mask_.size(); }
  bool contains(std::size_t k) const { return mask_[k] != 0; }
  void set(std::size_t k, bool value = true) { mask_[k] = value ? 1 : 0; }
  std::size_t count() const;

 private:
  std::vector<std::uint8_t> mask_;
};

/// Density proportional to a separable Gaussian kernel centred at (mean_x,
/// mean_y), truncated to the area and renormalized on the grid.
AreaGrid truncated_gaussian(const GridSpec& spec, double mean_x, double mean_y, double sigma_x,
                            double sigma_y);

AreaGrid uniform_density(const GridSpec& spec);

/// sum over cells in region of f * cell_area.
double measure(const AreaGrid& grid, const CellSubset& region);

/// sum over cells in region of weight * f * cell_area.
double integrate_weighted(const AreaGrid& grid, const CellSubset& region,
                          std::span<const double> weight);

/// CSV rows (x_m, y_m, f) with a header line.
void write_density_csv(std::ostream& os, const AreaGrid& grid);

}  // namespace uavot
