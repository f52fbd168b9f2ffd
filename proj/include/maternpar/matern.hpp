#pragma once

#include "maternpar/params.hpp"

namespace maternpar {

/// Distances below this are treated as lag zero (nugget applies).
inline constexpr double kZeroLag = 1e-14;

/// Covariance value M(h; theta) for the parameter set's variant, including
/// the nugget indicator term at h = 0. The M2 value at h = 0 comes from the
/// analytic limit x^nu K_nu(x) -> 2^{nu-1} Gamma(nu).
double matern_eval(const MaternParams& p, double h);

/// Pointwise derivative dM(h; theta)/d(theta_index), index in {0,1,2,3}.
/// Order derivatives of K_nu use the forward-difference method with the
/// default increment; argument derivatives use the recurrence identity.
double matern_deriv(const MaternParams& p, double h, int index);

/// Correlation at lag h (unit-variance value, nugget excluded); used by the
/// effective-range machinery and the AER metric's calibration checks.
double matern_correlation(Variant v, double range, double nu, double h);

} // namespace maternpar
