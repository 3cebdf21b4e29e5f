// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace friction_walk {

/// Sampling a jump from the absorbing state k = 0 (the scattering rate
/// vanishes there, so the next jump time would be infinite).
class ZeroMomentumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside its mathematical domain (masses, mass ratio, xi, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Query outside the range covered by a path or function.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A configured resource cap (jump count, horizon) was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few tail events to estimate a large-deviation rate.
class InsufficientTailError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough data points for a fit.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace friction_walk
