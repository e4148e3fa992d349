#pragma once

#include <stdexcept>
#include <string>

namespace sgdci {

// Caller broke a documented precondition (bad index, n = 0, empty batch, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

// a^T Sigma a came out clearly negative.
class DegenerateCovariance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every replica was filtered out by the r_0 radius, so there is nothing to
// take a quantile of.
class NoAcceptedReplicas : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleUnavailable : public std::runtime_error {
 public:
  OracleUnavailable(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double gradient_norm)
      : std::runtime_error(what), gradient_norm_(gradient_norm) {}
  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  double gradient_norm_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgdci
