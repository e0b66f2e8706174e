#pragma once

#include <stdexcept>
#include <string>

namespace bec {

/// Process exit codes shared by every command of the tool.
enum class ExitCode : int {
  ok = 0,
  config_error = 2,
  solver_failure = 3,
  verification_failure = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Problem definition or caller contract violations.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config_error; }
};

class InvalidParameter : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class OutOfDomain : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class OutOfRegime : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Numerical failures.
class SolverFailure : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::solver_failure; }
};

class DomainTooSmall : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class ResolutionError : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class CapacityError : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class BasisInsufficient : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

// Stored reports that are missing, corrupt or violate an invariant.
class IntegrityError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::verification_failure; }
};

}  // namespace bec
