#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavot/grid_density.hpp"

namespace uavot {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Propagation constants of the probabilistic LoS/NLoS air-to-ground model.
/// All values are linear; dB conversion happens when a configuration is loaded.
struct ChannelParams {
  double carrier_hz = 2e9;
  double mu_los = 1.9952623149688795;   // 3 dB excess loss
  double mu_nlos = 199.52623149688787;  // 23 dB excess loss
  double b1 = 0.36;                     // dense urban
  double b2 = 0.21;
  double noise_density = 1e-20;  // W/Hz, i.e. -170 dBm/Hz
  double beta = 1.0;             // interference factor
  double gamma_th = 0.01;        // SINR threshold, -20 dB

  void validate() const;

  /// K_o = (4 pi f_c d_o / c)^2 with d_o = 1 m.
  double path_loss_constant() const;
};

struct UavNode {
  double x = 0.0;
  double y = 0.0;
  double altitude = 200.0;
  double power_w = 0.5;
  double bandwidth_hz = 1e6;
  double max_hover_s = 1800.0;

  void validate() const;
};

/// Elevation-angle LoS probability b1 * (theta_deg - 15)^b2, clamped to [0, 1].
double los_probability(const UavNode& uav, double x, double y, const ChannelParams& params);

/// Average linear path loss K_o d^2 [P_LoS mu_LoS + (1 - P_LoS) mu_NLoS].
double mean_path_loss(const UavNode& uav, double x, double y, const ChannelParams& params);

/// Mean received power (W) of a user at (x, y) from the given UAV.
double received_power(const UavNode& uav, double x, double y, const ChannelParams& params);

/// Per-UAV, per-cell received power, SINR and spectral efficiency.
///
/// Arrays are UAV-major: entry (i, k) lives at i * cell_count + k.
class RadioField {
 public:
  /// Builds a field from raw per-(UAV, cell) received power and SINR; the
  /// spectral efficiency log2(1 + SINR) and feasibility masks are derived.
  RadioField(std::size_t uav_count, std::size_t cell_count, std::vector<double> received_power,
             std::vector<double> sinr, double gamma_th);

  std::size_t uav_count() const { return uav_count_; }
  std::size_t cell_count() const { return cell_count_; }
  double gamma_th() const { return gamma_th_; }

  std::span<const double> received_power(std::size_t i) const { return row(power_, i); }
  std::span<const double> sinr(std::size_t i) const { return row(sinr_, i); }
  std::span<const double> efficiency(std::size_t i) const { return row(efficiency_, i); }

  /// UAV i can serve cell k (SINR at or above threshold).
  bool serves(std::size_t i, std::size_t k) const {
    return sinr_[i * cell_count_ + k] >= gamma_th_;
  }
  /// Cells served by at least one UAV.
  const CellSubset& feasible() const { return feasible_; }

 private:
  std::span<const double> row(const std::vector<double>& v, std::size_t i) const {
    return std::span<const double>(v).subspan(i * cell_count_, cell_count_);
  }

  std::size_t uav_count_;
  std::size_t cell_count_;
  double gamma_th_;
  std::vector<double> power_;
  std::vector<double> sinr_;
  std::vector<double> efficiency_;
  CellSubset feasible_;
};

/// SINR of UAV i at each cell: P_i / (beta * sum_{j != i} P_j + N_0 B_i).
RadioField compute_radio_field(const AreaGrid& grid, std::span<const UavNode> uavs,
                               const ChannelParams& params);

}  // namespace uavot
