#pragma once

#include <stdexcept>
#include <string>

namespace uavot {

/// Invalid argument to a model constructor or solver.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Geometric input outside a formula's domain (e.g. zero link distance).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The instance cannot be served: a cell is out of reach of every UAV, or a
/// hover budget cannot cover the control overhead.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its budget or stalled.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search requested on an instance that is too large.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavot
