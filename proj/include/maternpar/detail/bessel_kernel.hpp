#pragma once

// Scalar-templated evaluation kernel for the modified Bessel function of the
// second kind with real order. Temme's series on x <= 2, Steed's continued
// fraction CF2 on x > 2, then upward recurrence in the order. Instantiated
// with double, long double, and a binary128 type (order-derivative paths).

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace maternpar::detail {

template <class Real> struct scalar_traits {
  static Real pi() { return Real(3.141592653589793238462643383279502884L); }
  static Real euler_gamma() {
    return Real(0.577215664901532860606512090082402431L);
  }
  static Real tgamma(Real x) {
    using std::tgamma;
    return tgamma(x);
  }
};

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2 mu), gam2, and the two
// reciprocal gammas, for |mu| <= 1/2. Near mu = 0 the subtraction cancels,
// so a short even series in mu (coefficients of 1/Gamma(1+mu)) takes over.
template <class Real>
void temme_gammas(Real mu, Real& gam1, Real& gam2, Real& gampl, Real& gammi) {
  using std::abs;
  using std::pow;
  gampl = Real(1) / scalar_traits<Real>::tgamma(Real(1) + mu);
  gammi = Real(1) / scalar_traits<Real>::tgamma(Real(1) - mu);
  gam2 = (gammi + gampl) / Real(2);
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real cutoff = pow(Real(1600) * eps, Real(1) / Real(9));
  if (abs(mu) < cutoff) {
    const Real c2 = scalar_traits<Real>::euler_gamma();
    const Real c4 = Real(-0.0420026350340952355290039348754298L);
    const Real c6 = Real(-0.0421977345555443367482083012891874L);
    const Real c8 = Real(0.00721894324666309954239501034044657L);
    const Real c10 = Real(-0.000215241674114950972815729963053648L);
    const Real m2 = mu * mu;
    gam1 = -(c2 + m2 * (c4 + m2 * (c6 + m2 * (c8 + m2 * c10))));
  } else {
    gam1 = (gammi - gampl) / (Real(2) * mu);
  }
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x > 0.
template <class Real>
std::pair<Real, Real> bessel_k_seed(Real mu, Real x) {
  using std::abs;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real pi = scalar_traits<Real>::pi();
  const int max_iter = 20000;

  if (x <= Real(2)) { // Temme 1975 series
    const Real x2 = x / Real(2);
    const Real pimu = pi * mu;
    const Real fact = (abs(pimu) < eps) ? Real(1) : pimu / sin(pimu);
    Real d = -log(x2);
    Real e = mu * d;
    const Real fact2 = (abs(e) < eps) ? Real(1) : sinh(e) / e;
    Real gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    Real ff = fact * (gam1 * cosh(e) + gam2 * fact2 * d);
    Real sum = ff;
    e = exp(e);
    Real p = e / (Real(2) * gampl);
    Real q = Real(1) / (Real(2) * e * gammi);
    Real c = Real(1);
    d = x2 * x2;
    Real sum1 = p;
    const Real mu2 = mu * mu;
    for (int i = 1; i <= max_iter; ++i) {
      const Real ri(i);
      ff = (ri * ff + p + q) / (ri * ri - mu2);
      c *= d / ri;
      p /= (ri - mu);
      q /= (ri + mu);
      const Real del = c * ff;
      sum += del;
      sum1 += c * (p - ri * ff);
      if (abs(del) < abs(sum) * eps) {
        return {sum, sum1 * (Real(2) / x)};
      }
    }
    throw std::runtime_error("bessel_k: Temme series did not converge");
  }

  // Steed's CF2
  Real b = Real(2) * (Real(1) + x);
  Real d = Real(1) / b;
  Real h = d, delh = d;
  Real q1 = Real(0), q2 = Real(1);
  const Real a1 = Real(0.25) - mu * mu;
  Real q = a1, c = a1;
  Real a = -a1;
  Real s = Real(1) + q * delh;
  for (int i = 2; i <= max_iter; ++i) {
    a -= Real(2 * (i - 1));
    c = -a * c / Real(i);
    const Real qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += Real(2);
    d = Real(1) / (b + a * d);
    delh = (b * d - Real(1)) * delh;
    h += delh;
    const Real dels = q * delh;
    s += dels;
    if (abs(dels) < abs(s) * eps) {
      h = a1 * h;
      const Real kmu = sqrt(pi / (Real(2) * x)) * exp(-x) / s;
      return {kmu, kmu * (mu + x + Real(0.5) - h) / x};
    }
  }
  throw std::runtime_error("bessel_k: CF2 did not converge");
}

// K_nu(x) for nu >= 0, x > 0 (callers fold negative orders via K_{-nu}=K_nu).
template <class Real> Real bessel_k_kernel(Real nu, Real x) {
  using std::floor;
  const int nl = int(floor(double(nu) + 0.5));
  const Real mu = nu - Real(nl);
  auto [km, kp] = bessel_k_seed(mu, x);
  const Real xi2 = Real(2) / x;
  for (int j = 1; j <= nl; ++j) {
    const Real knext = km + (mu + Real(j)) * xi2 * kp;
    km = kp;
    kp = knext;
  }
  // after the loop km == K_{mu+nl} == K_nu
  return km;
}

} // namespace maternpar::detail
