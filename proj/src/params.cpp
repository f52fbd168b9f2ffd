#include "maternpar/params.hpp"
#include "maternpar/bessel.hpp"
#include "maternpar/matern.hpp"

#include <cmath>
#include <stdexcept>

namespace maternpar {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;

double gamma_ratio(double nu) { // Gamma(nu + 1/2) / Gamma(nu)
  return std::exp(std::lgamma(nu + 0.5) - std::lgamma(nu));
}
} // namespace

const char* variant_name(Variant v) {
  switch (v) {
  case Variant::M1: return "m1";
  case Variant::M2: return "m2";
  default: return "m3";
  }
}

Variant variant_from_name(const std::string& name) {
  if (name == "m1" || name == "M1") return Variant::M1;
  if (name == "m2" || name == "M2") return Variant::M2;
  if (name == "m3" || name == "M3") return Variant::M3;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

MaternParams make_m1(double sigma2, double beta, double nu, double tau2) {
  MaternParams p{Variant::M1, {sigma2, beta, nu, tau2}};
  validate(p);
  return p;
}
MaternParams make_m2(double phi, double alpha, double nu, double tau2) {
  MaternParams p{Variant::M2, {phi, alpha, nu, tau2}};
  validate(p);
  return p;
}
MaternParams make_m3(double sigma2, double rho, double nu, double tau2) {
  MaternParams p{Variant::M3, {sigma2, rho, nu, tau2}};
  validate(p);
  return p;
}
MaternParams make_params(Variant v, const Eigen::Vector4d& theta) {
  MaternParams p{v, theta};
  validate(p);
  return p;
}

void validate(const MaternParams& p) {
  if (!p.theta.allFinite())
    throw std::invalid_argument("MaternParams: non-finite parameter");
  if (p.var() < 0.0 || (p.variant == Variant::M2 && p.var() <= 0.0))
    throw std::invalid_argument("MaternParams: variance/scale must be >= 0");
  if (p.range() <= 0.0)
    throw std::invalid_argument("MaternParams: range parameter must be > 0");
  if (p.nu() <= 0.0)
    throw std::invalid_argument("MaternParams: smoothness must be > 0");
  if (p.tau2() < 0.0)
    throw std::invalid_argument("MaternParams: nugget must be >= 0");
}

MaternParams convert(const MaternParams& p, Variant target) {
  validate(p);
  if (p.variant == target) return p;
  const double nu = p.nu(), tau2 = p.tau2();
  const double gr = gamma_ratio(nu);
  // Route through M1's (sigma2, beta).
  double sigma2, beta;
  switch (p.variant) {
  case Variant::M1:
    sigma2 = p.var();
    beta = p.range();
    break;
  case Variant::M2: {
    const double phi = p.var(), alpha = p.range();
    sigma2 = kSqrtPi * phi / (gr * std::pow(alpha, 2.0 * nu));
    beta = 1.0 / alpha;
    break;
  }
  default:
    sigma2 = p.var();
    beta = p.range() / (2.0 * std::sqrt(nu));
    break;
  }
  switch (target) {
  case Variant::M1:
    return {Variant::M1, {sigma2, beta, nu, tau2}};
  case Variant::M2: {
    const double phi = sigma2 * gr / (kSqrtPi * std::pow(beta, 2.0 * nu));
    return {Variant::M2, {phi, 1.0 / beta, nu, tau2}};
  }
  default:
    return {Variant::M3, {sigma2, 2.0 * std::sqrt(nu) * beta, nu, tau2}};
  }
}

namespace {

// The three elementary Jacobians as printed in closed form; composition and
// inversion deliver the remaining ordered pairs.
Eigen::Matrix4d jac_1_to_2(const MaternParams& m2) { // d(theta_1)/d(theta_2)
  const double phi = m2.var(), alpha = m2.range(), nu = m2.nu();
  const double s2 = kSqrtPi * phi / (gamma_ratio(nu) * std::pow(alpha, 2.0 * nu));
  Eigen::Matrix4d j = Eigen::Matrix4d::Identity();
  j(0, 0) = s2 / phi;
  j(0, 1) = -2.0 * nu * s2 / alpha;
  j(0, 2) = s2 * (digamma(nu) - digamma(nu + 0.5) - 2.0 * std::log(alpha));
  j(1, 1) = -1.0 / (alpha * alpha);
  return j;
}

Eigen::Matrix4d jac_1_to_3(const MaternParams& m3) { // d(theta_1)/d(theta_3)
  const double rho = m3.range(), nu = m3.nu();
  Eigen::Matrix4d j = Eigen::Matrix4d::Identity();
  j(1, 1) = 1.0 / (2.0 * std::sqrt(nu));
  j(1, 2) = -rho / (4.0 * std::pow(nu, 1.5));
  return j;
}

Eigen::Matrix4d jac_2_to_3(const MaternParams& m3) { // d(theta_2)/d(theta_3)
  const double s2 = m3.var(), rho = m3.range(), nu = m3.nu();
  const double phi = s2 * gamma_ratio(nu) *
                     std::pow(2.0 * std::sqrt(nu) / rho, 2.0 * nu) / kSqrtPi;
  Eigen::Matrix4d j = Eigen::Matrix4d::Identity();
  j(0, 0) = phi / s2;
  j(0, 1) = -2.0 * nu * phi / rho;
  j(0, 2) = phi * (digamma(nu + 0.5) - digamma(nu) + 1.0 +
                   std::log(4.0 * nu) - 2.0 * std::log(rho));
  j(1, 1) = -2.0 * std::sqrt(nu) / (rho * rho);
  j(1, 2) = 1.0 / (std::sqrt(nu) * rho);
  return j;
}

} // namespace

Eigen::Matrix4d jacobian(Variant source, Variant target,
                         const MaternParams& at_source) {
  validate(at_source);
  if (at_source.variant != source)
    throw std::invalid_argument("jacobian: parameters not in source variant");
  if (source == target) return Eigen::Matrix4d::Identity();
  const MaternParams at_target = convert(at_source, target);
  if (source == Variant::M1 && target == Variant::M2) return jac_1_to_2(at_target);
  if (source == Variant::M1 && target == Variant::M3) return jac_1_to_3(at_target);
  if (source == Variant::M2 && target == Variant::M3) return jac_2_to_3(at_target);
  // Reverse transforms by matrix inversion at the linked point.
  if (source == Variant::M2 && target == Variant::M1)
    return jac_1_to_2(at_source).inverse().eval();
  if (source == Variant::M3 && target == Variant::M1)
    return jac_1_to_3(at_source).inverse().eval();
  return jac_2_to_3(at_source).inverse().eval(); // M3 -> M2
}

MaternParams effective_range_solve(Variant v, double nu, double target_h,
                                   double level) {
  if (!(target_h > 0.0))
    throw std::invalid_argument("effective_range_solve: target_h must be > 0");
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("effective_range_solve: level must lie in (0,1)");
  if (!(nu > 0.0))
    throw std::invalid_argument("effective_range_solve: nu must be > 0");

  // Correlation is increasing in beta/rho and decreasing in alpha; solve on a
  // monotone bracket, expanding geometrically if needed.
  auto corr = [&](double range) { return matern_correlation(v, range, nu, target_h); };
  const bool increasing = v != Variant::M2;
  double lo = 1e-6, hi = 1e3;
  auto low_val = [&] { return corr(increasing ? lo : hi); };
  auto high_val = [&] { return corr(increasing ? hi : lo); };
  for (int grow = 0; grow < 60 && low_val() > level; ++grow)
    (increasing ? lo : hi) = increasing ? lo / 8.0 : hi * 8.0;
  for (int grow = 0; grow < 60 && high_val() < level; ++grow)
    (increasing ? hi : lo) = increasing ? hi * 8.0 : lo / 8.0;
  if (low_val() > level || high_val() < level)
    throw std::runtime_error("effective_range_solve: bracketing failed");

  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double c = corr(mid);
    const bool go_up = increasing ? (c < level) : (c > level);
    (go_up ? lo : hi) = mid;
    if ((hi - lo) <= 1e-10 * mid) break;
  }
  const double range = 0.5 * (lo + hi);

  switch (v) {
  case Variant::M1: return {Variant::M1, {1.0, range, nu, 0.0}};
  case Variant::M3: return {Variant::M3, {1.0, range, nu, 0.0}};
  default: {
    // phi chosen so that M2(0) = 1.
    const double phi =
        gamma_ratio(nu) * std::pow(range, 2.0 * nu) / kSqrtPi;
    return {Variant::M2, {phi, range, nu, 0.0}};
  }
  }
}

} // namespace maternpar
