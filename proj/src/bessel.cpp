#include "maternpar/bessel.hpp"
#include "maternpar/detail/bessel_kernel.hpp"
#include "maternpar/errors.hpp"
#include "maternpar/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace maternpar {

namespace detail {

using quadf = boost::multiprecision::cpp_bin_float_quad;

// Literal long-double constants carry only ~19 digits; binary128 needs the
// full decimal expansions.
template <> struct scalar_traits<quadf> {
  static quadf pi() {
    return quadf("3.14159265358979323846264338327950288419716939937510582");
  }
  static quadf euler_gamma() {
    return quadf("0.57721566490153286060651209008240243104215933593992359");
  }
  static quadf tgamma(quadf x) { return boost::math::tgamma(x); }
};

} // namespace detail

namespace {

template <class Real> double bessel_k_as(double nu, double x) {
  const Real v = Real(std::abs(nu));
  const Real r = detail::bessel_k_kernel<Real>(v, Real(x));
  const double out = double(r);
  if (!std::isfinite(out))
    throw std::overflow_error("bessel_k: value exceeds the double range");
  return out;
}

void check_x(double x) {
  if (!(x > 0.0))
    throw std::domain_error("bessel_k: argument x must be positive");
}

double dnu_exact(double nu, double x) {
  const int n = int(std::llround(nu));
  if (n < 1 || std::abs(nu - double(n)) > 1e-12)
    throw std::invalid_argument(
        "bessel_k_dnu: EXACT requires a positive integer order");
  // One seed at mu = 0 gives the whole integer ladder K_0 .. K_{n-1}.
  auto [k0, k1] = detail::bessel_k_seed<double>(0.0, x);
  std::vector<double> kint(static_cast<std::size_t>(n), 0.0);
  kint[0] = k0;
  if (n > 1) kint[1] = k1;
  for (int i = 2; i < n; ++i)
    kint[std::size_t(i)] = kint[std::size_t(i - 2)] +
                           (2.0 * (i - 1) / x) * kint[std::size_t(i - 1)];
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  double sum = 0.0, ifact = 1.0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) ifact *= i;
    sum += std::pow(0.5 * x, double(i - n)) / (ifact * double(n - i)) *
           kint[std::size_t(i)];
  }
  const double out = 0.5 * nfact * sum;
  if (!std::isfinite(out))
    throw std::overflow_error("bessel_k_dnu: EXACT value overflows");
  return out;
}

double dnu_intg(double nu, double x) {
  if (nu == 0.0) return 0.0;
  // Truncate where x cosh(t) - nu t > 45 (integrand below ~1e-19).
  double tmax = 1.0;
  while (x * std::cosh(tmax) - nu * tmax <= 45.0) {
    tmax += 0.5;
    if (tmax > 800.0)
      throw std::overflow_error("bessel_k_dnu: INTG truncation not found");
  }
  // Stable integrand: t e^{nu t - x cosh t} (1 - e^{-2 nu t})/2.
  double peak_exp = 0.0;
  for (double t = 0.0; t <= tmax; t += tmax / 64.0)
    peak_exp = std::max(peak_exp, nu * t - x * std::cosh(t));
  if (peak_exp > 700.0)
    throw std::overflow_error("bessel_k_dnu: INTG integrand overflows");
  auto f = [nu, x](double t) {
    const double e = nu * t - x * std::cosh(t);
    return t * std::exp(e) * 0.5 * (1.0 - std::exp(-2.0 * nu * t));
  };
  return integrate_gk(f, 0.0, tmax, 1e-10, 5e-15);
}

template <class Real> double dnu_fd(double nu, double x, double delta) {
  const Real k1 = detail::bessel_k_kernel<Real>(Real(nu) + Real(delta), Real(x));
  const Real k0 = detail::bessel_k_kernel<Real>(Real(nu), Real(x));
  const double out = double((k1 - k0) / Real(delta));
  if (!std::isfinite(out))
    throw std::overflow_error("bessel_k_dnu: FD value overflows");
  return out;
}

} // namespace

double bessel_k(double nu, double x) {
  check_x(x);
  return bessel_k_as<double>(nu, x);
}

double bessel_k_dx(double nu, double x) {
  check_x(x);
  return -0.5 * (bessel_k(nu - 1.0, x) + bessel_k(nu + 1.0, x));
}

double bessel_k_dnu(double nu, double x,
                    const BesselOrderDerivMethod& method) {
  check_x(x);
  const double sign = nu < 0.0 ? -1.0 : 1.0; // K_{-nu} = K_nu makes d/dnu odd
  const double v = std::abs(nu);
  return sign * std::visit(
                    [&](const auto& m) -> double {
                      using M = std::decay_t<decltype(m)>;
                      if constexpr (std::is_same_v<M, FdMethod>) {
                        if (!(m.delta > 0.0) || m.delta > 1e-6)
                          throw std::invalid_argument(
                              "bessel_k_dnu: FD increment must be in (0, 1e-6]");
                        if (m.delta >= 1e-11)
                          return dnu_fd<long double>(v, x, m.delta);
                        return dnu_fd<detail::quadf>(v, x, m.delta);
                      } else if constexpr (std::is_same_v<M, ExactMethod>) {
                        return dnu_exact(v, x);
                      } else if constexpr (std::is_same_v<M, IntgMethod>) {
                        return dnu_intg(v, x);
                      } else {
                        return bessel_k(v, x) *
                               (std::log(2.0 * v / x) - 0.5 / v);
                      }
                    },
                    method);
}

double bessel_k_dnu(double nu, double x) {
  return bessel_k_dnu(nu, x, FdMethod{});
}

double digamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("digamma: argument must be positive");
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with Bernoulli coefficients B_2..B_14.
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 * (1.0 / 12.0 +
              inv2 * (-1.0 / 120.0 +
                      inv2 * (1.0 / 252.0 +
                              inv2 * (-1.0 / 240.0 +
                                      inv2 * (1.0 / 132.0 +
                                              inv2 * (-691.0 / 32760.0 +
                                                      inv2 * (1.0 / 12.0)))))));
  return result + std::log(x) - 0.5 / x - series;
}

} // namespace maternpar
