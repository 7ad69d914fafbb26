#pragma once

#include <stdexcept>
#include <string>

namespace lemni {

/// Invalid user-facing parameter (bad flag value, empty annulus radius, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A requested allocation exceeds the configured cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature gave up; carries the best estimate it had.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate(estimate), error_estimate(error_estimate) {}
  double estimate;
  double error_estimate;
};

/// Tail CDF requested strictly between the cut points, where no closed form exists.
struct MiddleRangeUnsupported : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace lemni
