#include "maternpar/matern.hpp"
#include "maternpar/bessel.hpp"

#include <cmath>

namespace maternpar {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// 2^{1-nu} / Gamma(nu)
double m1_prefactor(double nu) {
  return std::exp((1.0 - nu) * std::log(2.0) - std::lgamma(nu));
}

// sqrt(pi) / (2^{nu-1} Gamma(nu + 1/2) alpha^{2 nu})
double m2_prefactor(double nu, double alpha) {
  return kSqrtPi * std::exp((1.0 - nu) * std::log(2.0) - std::lgamma(nu + 0.5) -
                            2.0 * nu * std::log(alpha));
}

double m2_at_zero(double phi, double alpha, double nu) {
  return kSqrtPi * phi *
         std::exp(std::lgamma(nu) - std::lgamma(nu + 0.5) -
                  2.0 * nu * std::log(alpha));
}

} // namespace

double matern_correlation(Variant v, double range, double nu, double h) {
  if (h < kZeroLag) return 1.0;
  const double x = (v == Variant::M1)   ? h / range
                   : (v == Variant::M2) ? range * h
                                        : 2.0 * std::sqrt(nu) * h / range;
  return m1_prefactor(nu) * std::pow(x, nu) * bessel_k(nu, x);
}

double matern_eval(const MaternParams& p, double h) {
  validate(p);
  const double nu = p.nu();
  if (h < kZeroLag) {
    if (p.variant == Variant::M2)
      return m2_at_zero(p.var(), p.range(), nu) + p.tau2();
    return p.var() + p.tau2();
  }
  switch (p.variant) {
  case Variant::M1: {
    const double x = h / p.range();
    return p.var() * m1_prefactor(nu) * std::pow(x, nu) * bessel_k(nu, x);
  }
  case Variant::M2: {
    const double alpha = p.range(), x = alpha * h;
    return p.var() * m2_prefactor(nu, alpha) * std::pow(x, nu) *
           bessel_k(nu, x);
  }
  default: {
    const double x = 2.0 * std::sqrt(nu) * h / p.range();
    return p.var() * m1_prefactor(nu) * std::pow(x, nu) * bessel_k(nu, x);
  }
  }
}

double matern_deriv(const MaternParams& p, double h, int index) {
  validate(p);
  if (index < 0 || index > 3)
    throw std::invalid_argument("matern_deriv: parameter index out of range");
  const double nu = p.nu();

  if (index == 3) return h < kZeroLag ? 1.0 : 0.0; // (S10)

  if (h < kZeroLag) {
    // M1/M3: M(0) = sigma2 + tau2 depends on sigma2 only. M2's limit
    // sqrt(pi) phi Gamma(nu) / (Gamma(nu+1/2) alpha^{2nu}) moves with all
    // three free parameters.
    if (p.variant != Variant::M2) return index == 0 ? 1.0 : 0.0;
    const double z0 = m2_at_zero(p.var(), p.range(), nu);
    if (index == 0) return z0 / p.var();
    if (index == 1) return -2.0 * nu * z0 / p.range();
    return z0 * (digamma(nu) - digamma(nu + 0.5) - 2.0 * std::log(p.range()));
  }

  switch (p.variant) {
  case Variant::M1: {
    const double beta = p.range(), x = h / beta;
    const double c = m1_prefactor(nu), xp = std::pow(x, nu);
    const double k = bessel_k(nu, x);
    switch (index) {
    case 0: return c * xp * k;                                      // (S1)
    case 1: {                                                       // (S2)
      const double kdx = bessel_k_dx(nu, x);
      return p.var() * c * xp * (-nu * k - x * kdx) / beta;
    }
    default: {                                                      // (S3)
      const double kdnu = bessel_k_dnu(nu, x);
      return p.var() * c * xp *
             ((std::log(x) - std::log(2.0) - digamma(nu)) * k + kdnu);
    }
    }
  }
  case Variant::M2: {
    const double alpha = p.range(), x = alpha * h;
    const double g = m2_prefactor(nu, alpha), xp = std::pow(x, nu);
    const double k = bessel_k(nu, x);
    switch (index) {
    case 0: return g * xp * k;                                      // (S4)
    case 1: {                                                       // (S5)
      const double kdx = bessel_k_dx(nu, x);
      return p.var() * g * xp * (-nu * k + x * kdx) / alpha;
    }
    default: {                                                      // (S6)
      const double kdnu = bessel_k_dnu(nu, x);
      return p.var() * g * xp *
             ((std::log(h / (2.0 * alpha)) - digamma(nu + 0.5)) * k + kdnu);
    }
    }
  }
  default: {
    const double rho = p.range(), y = 2.0 * std::sqrt(nu) * h / rho;
    const double c = m1_prefactor(nu), yp = std::pow(y, nu);
    const double k = bessel_k(nu, y);
    switch (index) {
    case 0: return c * yp * k;                                      // (S7)
    case 1: {                                                       // (S8)
      const double kdy = bessel_k_dx(nu, y);
      return p.var() * c * yp * (-nu * k - y * kdy) / rho;
    }
    default: {                                                      // (S9)
      const double kdy = bessel_k_dx(nu, y);
      const double kdnu = bessel_k_dnu(nu, y);
      return p.var() * c * yp *
             ((std::log(0.5 * y) - digamma(nu) + 0.5) * k +
              y / (2.0 * nu) * kdy + kdnu);
    }
    }
  }
  }
}

} // namespace maternpar
