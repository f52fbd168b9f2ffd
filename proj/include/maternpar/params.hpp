#pragma once

#include <Eigen/Dense>
#include <string>

namespace maternpar {

/// The three Matern parameterizations. Parameter order is fixed per variant:
/// M1 (sigma2, beta, nu, tau2), M2 (phi, alpha, nu, tau2),
/// M3 (sigma2, rho, nu, tau2). Fisher and Jacobian rows follow this order.
enum class Variant { M1, M2, M3 };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name); // "m1" | "m2" | "m3"

struct MaternParams {
  Variant variant = Variant::M1;
  Eigen::Vector4d theta{1.0, 0.1, 0.5, 0.0};

  double var() const { return theta[0]; }   // sigma2 (M1/M3) or phi (M2)
  double range() const { return theta[1]; } // beta (M1), alpha (M2), rho (M3)
  double nu() const { return theta[2]; }
  double tau2() const { return theta[3]; }
};

MaternParams make_m1(double sigma2, double beta, double nu, double tau2 = 0.0);
MaternParams make_m2(double phi, double alpha, double nu, double tau2 = 0.0);
MaternParams make_m3(double sigma2, double rho, double nu, double tau2 = 0.0);
MaternParams make_params(Variant v, const Eigen::Vector4d& theta);

/// Throws std::invalid_argument when positivity constraints are violated
/// (var >= 0 with var > 0 for M2, range > 0, nu > 0, tau2 >= 0).
void validate(const MaternParams& p);

/// Table-1 link functions; nu and tau2 pass through unchanged.
MaternParams convert(const MaternParams& p, Variant target);

/// Jacobian of the link functions in the transport convention
/// (J_{k->m})_{ij} = d(theta_k)_i / d(theta_m)_j, evaluated at `at_source`
/// (expressed in the source variant). Fisher matrices transform as
/// I(theta_m) = J^T I(theta_k) J. The nugget row/column is identity.
Eigen::Matrix4d jacobian(Variant source, Variant target,
                         const MaternParams& at_source);

/// Unit-variance parameters of the requested variant whose correlation at
/// target_h equals `level`, solved by bracketing bisection in the range
/// parameter (relative tolerance 1e-10).
MaternParams effective_range_solve(Variant v, double nu, double target_h,
                                   double level = 0.05);

} // namespace maternpar
