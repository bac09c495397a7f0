#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwsearch {

// Base for every error raised by the library. kind() is a stable identifier
// used in the CLI's machine-readable error output.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Bad user input: malformed specs, out-of-range parameters. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

class SyntaxError : public ConfigError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : ConfigError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "syntax"; }

 private:
  std::size_t position_;
};

class RangeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
  const char* kind() const noexcept override { return "range"; }
};

// Dense oracle asked for a graph larger than its configured cap.
class OracleCapError : public ConfigError {
 public:
  using ConfigError::ConfigError;
  const char* kind() const noexcept override { return "oracle_cap"; }
};

// Bound checks refuse couplings inside the critical window.
class CriticalMarginError : public ConfigError {
 public:
  using ConfigError::ConfigError;
  const char* kind() const noexcept override { return "critical_margin"; }
};

// Numerical failure inside a computation. CLI exit code 3.
class ComputationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "computation"; }
};

class PoleError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "pole_hit"; }
};

class BracketError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "bracket_failure"; }
};

class DivergenceError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "divergent"; }
};

class NoRootError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "no_root"; }
};

}  // namespace qwsearch
