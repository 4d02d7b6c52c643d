#pragma once

#include <cmath>
#include <span>

namespace uavot {

/// Neumaier-compensated accumulator. Keeps cell sweeps over 10^4..10^5
/// terms accurate to a few ulps regardless of summation order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace uavot
