#pragma once

#include <stdexcept>
#include <string>

namespace uavcov {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value is out of range. The message names the field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& reason)
      : Error("invalid configuration: " + field + " " + reason), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The problem instance cannot support the requested operation
/// (unreachable origins, zones cut off from every recharge site, ...).
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// Non-positive argument to a physical formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs with inconsistent dimensions, or unreadable files.
class InputError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

/// The LP backend did not return an optimal solution.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Rounding found no battery-safe action for a UAV.
class RoundingError : public Error {
 public:
  RoundingError(int uav, int step, const std::string& reason)
      : Error("rounding failed for uav " + std::to_string(uav) + " at step " +
              std::to_string(step) + ": " + reason),
        uav_(uav),
        step_(step) {}
  int uav() const noexcept { return uav_; }
  int step() const noexcept { return step_; }

 private:
  int uav_;
  int step_;
};

/// The brute-force oracle refuses instances above its size limits.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavcov
