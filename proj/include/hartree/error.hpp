#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hartree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collects every violated constraint of a configuration before reporting.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Conservation breach or wrap-around breach during time integration.
class SolverAlarm : public Error {
 public:
  using Error::Error;
};

/// Picard iteration failed to contract.
class ContractionFailure : public Error {
 public:
  ContractionFailure(const std::string& what, double factor)
      : Error(what), factor_(factor) {}
  double factor() const { return factor_; }

 private:
  double factor_;
};

}  // namespace hartree
