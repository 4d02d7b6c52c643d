#include "uavot/air_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uavot/errors.hpp"

namespace uavot {

void ChannelParams::validate() const {
  if (!(carrier_hz > 0.0)) throw ParameterError("channel: carrier frequency must be positive");
  if (!(mu_los >= 1.0) || !(mu_nlos >= 1.0)) {
    throw ParameterError("channel: excess attenuation factors must be >= 1 (linear)");
  }
  if (!(b1 >= 0.0) || !(b2 > 0.0)) throw ParameterError("channel: invalid environment constants");
  if (!(noise_density > 0.0)) throw ParameterError("channel: noise density must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("channel: beta must lie in [0, 1]");
  if (!(gamma_th > 0.0)) throw ParameterError("channel: SINR threshold must be positive");
}

double ChannelParams::path_loss_constant() const {
  const double r = 4.0 * std::numbers::pi * carrier_hz / kSpeedOfLight;
  return r * r;
}

void UavNode::validate() const {
  if (!std::isfinite(x) || !std::isfinite(y)) throw ParameterError("uav: position must be finite");
  if (!(altitude > 0.0)) throw ParameterError("uav: altitude must be positive");
  if (!(power_w > 0.0)) throw ParameterError("uav: transmit power must be positive");
  if (!(bandwidth_hz > 0.0)) throw ParameterError("uav: bandwidth must be positive");
  if (!(max_hover_s >= 0.0)) throw ParameterError("uav: max hover time must be >= 0");
}

namespace {

double distance(const UavNode& uav, double x, double y) {
  const double dx = x - uav.x;
  const double dy = y - uav.y;
  return std::sqrt(dx * dx + dy * dy + uav.altitude * uav.altitude);
}

double los_probability_at(double altitude, double d, const ChannelParams& p) {
  const double theta_deg = std::asin(std::min(1.0, altitude / d)) * 180.0 / std::numbers::pi;
  const double base = theta_deg - 15.0;
  if (base <= 0.0) return 0.0;
  return std::min(1.0, p.b1 * std::pow(base, p.b2));
}

double path_loss_at(double altitude, double d, double k_o, const ChannelParams& p) {
  const double plos = los_probability_at(altitude, d, p);
  return k_o * d * d * (plos * p.mu_los + (1.0 - plos) * p.mu_nlos);
}

}  // namespace

double los_probability(const UavNode& uav, double x, double y, const ChannelParams& params) {
  const double d = distance(uav, x, y);
  if (!(d > 0.0)) throw DomainError("los_probability: user coincides with the UAV");
  return los_probability_at(uav.altitude, d, params);
}

double mean_path_loss(const UavNode& uav, double x, double y, const ChannelParams& params) {
  const double d = distance(uav, x, y);
  if (!(d > 0.0)) throw DomainError("mean_path_loss: zero link distance");
  return path_loss_at(uav.altitude, d, params.path_loss_constant(), params);
}

double received_power(const UavNode& uav, double x, double y, const ChannelParams& params) {
  return uav.power_w / mean_path_loss(uav, x, y, params);
}

RadioField::RadioField(std::size_t uav_count, std::size_t cell_count,
                       std::vector<double> received_power, std::vector<double> sinr,
                       double gamma_th)
    : uav_count_(uav_count),
      cell_count_(cell_count),
      gamma_th_(gamma_th),
      power_(std::move(received_power)),
      sinr_(std::move(sinr)),
      feasible_(cell_count) {
  if (uav_count_ == 0) throw ParameterError("radio field: no UAVs");
  if (!(gamma_th_ > 0.0)) throw ParameterError("radio field: SINR threshold must be positive");
  const std::size_t n = uav_count_ * cell_count_;
  if (power_.size() != n || sinr_.size() != n) {
    throw ParameterError("radio field: expected " + std::to_string(n) + " entries per array");
  }
  efficiency_.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    if (!std::isfinite(power_[e]) || power_[e] < 0.0 || !std::isfinite(sinr_[e]) ||
        sinr_[e] < 0.0) {
      throw ParameterError("radio field: entries must be finite and non-negative");
    }
    efficiency_[e] = std::log2(1.0 + sinr_[e]);
  }
  for (std::size_t k = 0; k < cell_count_; ++k) {
    for (std::size_t i = 0; i < uav_count_; ++i) {
      if (serves(i, k)) {
        feasible_.set(k);
        break;
      }
    }
  }
}

RadioField compute_radio_field(const AreaGrid& grid, std::span<const UavNode> uavs,
                               const ChannelParams& params) {
  if (uavs.empty()) throw ParameterError("compute_radio_field: empty UAV list");
  params.validate();
  for (const auto& u : uavs) u.validate();

  const std::size_t m = uavs.size();
  const std::size_t n = grid.cell_count();
  const double k_o = params.path_loss_constant();

  std::vector<double> power(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    const UavNode& u = uavs[i];
    for (std::size_t k = 0; k < n; ++k) {
      const double d = distance(u, grid.cell_x(k), grid.cell_y(k));
      power[i * n + k] = u.power_w / path_loss_at(u.altitude, d, k_o, params);
    }
  }

  std::vector<double> sinr(m * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const double own = power[i * n + k];
      // Sum the others directly rather than total - own, which cancels badly
      // when one UAV dominates.
      double others = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) others += power[j * n + k];
      }
      const double noise = params.noise_density * uavs[i].bandwidth_hz;
      sinr[i * n + k] = own / (params.beta * others + noise);
    }
  }
  return RadioField(m, n, std::move(power), std::move(sinr), params.gamma_th);
}

}  // namespace uavot
