#pragma once

#include <stdexcept>
#include <string>

namespace maternpar {

/// Cholesky factorization failed: the leading minor of order `minor` is not
/// positive definite.
class NotPositiveDefiniteError : public std::runtime_error {
public:
  NotPositiveDefiniteError(int minor, const std::string& context)
      : std::runtime_error(context + ": leading minor of order " +
                           std::to_string(minor) + " is not positive definite"),
        minor_(minor) {}
  int minor() const { return minor_; }

private:
  int minor_;
};

/// Adaptive quadrature hit its subdivision limit before reaching the
/// requested tolerance; carries the achieved error estimate.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(double value, double achieved_error, double requested_tol)
      : std::runtime_error("quadrature did not converge: achieved error " +
                           std::to_string(achieved_error) + ", requested " +
                           std::to_string(requested_tol)),
        value_(value), achieved_error_(achieved_error) {}
  double value() const { return value_; }
  double achieved_error() const { return achieved_error_; }

private:
  double value_;
  double achieved_error_;
};

} // namespace maternpar
