#pragma once

#include "uavot/errors.hpp"

namespace uavot {

/// Quadratic control overhead g(n) = alpha * n^2 seconds for n served users.
struct ControlTimeModel {
  double alpha = 0.01;

  void validate() const {
    if (!(alpha >= 0.0)) throw ParameterError("control time: alpha must be non-negative");
  }

  /// g(n) for n users.
  double time(double users) const { return alpha * users * users; }

  /// d/da g(N a) = 2 alpha N^2 a, the congestion price of region mass a.
  double marginal(double mass, double total_users) const {
    return 2.0 * alpha * total_users * total_users * mass;
  }
};

}  // namespace uavot
