#pragma once

#include <stdexcept>
#include <string>

namespace antihom {

/// Malformed input: bad flags, unparsable files, out-of-domain arguments.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but describes something unphysical (gain, a
/// non-unitary evolution, a fully opaque sample with no baseline).
class PhysicsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds the photon/mode limits of the exact engine.
class CapacityError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace antihom
