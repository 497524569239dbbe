#pragma once

#include <stdexcept>
#include <string>

namespace frmpe {

/// Invalid physical parameters or a numerically degenerate input.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gram matrix of a polaron set is singular or beyond the allowed condition number.
class IllConditioned : public std::runtime_error {
 public:
  IllConditioned(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureNonConverged : public std::runtime_error {
 public:
  QuadratureNonConverged(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Every optimizer restart ended on an ill-conditioned or non-finite point.
class AllRestartsFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frmpe
