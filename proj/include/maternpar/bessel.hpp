#pragma once

#include <variant>

namespace maternpar {

/// Method selector for the order derivative dK_nu(x)/dnu.
/// FD: forward difference {K_{nu+delta} - K_nu}/delta, default delta = 1e-9.
/// EXACT: closed form at positive integer orders.
/// INTG: adaptive quadrature of int_0^inf t e^{-x cosh t} sinh(nu t) dt.
/// ASYM: large-nu approximation K_nu(x) {1 - 1/(2nu) - log(e x / (2nu))}.
struct FdMethod {
  double delta = 1e-9;
};
struct ExactMethod {};
struct IntgMethod {};
struct AsymMethod {};
using BesselOrderDerivMethod =
    std::variant<FdMethod, ExactMethod, IntgMethod, AsymMethod>;

/// Modified Bessel function of the second kind, real order.
/// Negative orders fold through K_{-nu} = K_nu. Throws std::domain_error for
/// x <= 0 and std::overflow_error when the value exceeds the double range.
double bessel_k(double nu, double x);

/// Argument derivative K'_nu(x) = -{K_{nu-1}(x) + K_{nu+1}(x)}/2.
double bessel_k_dx(double nu, double x);

/// Order derivative dK_nu(x)/dnu by the selected method.
/// EXACT requires nu to be a positive integer (std::invalid_argument
/// otherwise). FD evaluates the two K's in extended precision: long double
/// for delta >= 1e-11, binary128 below that.
double bessel_k_dnu(double nu, double x, const BesselOrderDerivMethod& method);
double bessel_k_dnu(double nu, double x); // FD with the default increment

/// Digamma function, x > 0 (std::domain_error at non-positive arguments).
double digamma(double x);

} // namespace maternpar
