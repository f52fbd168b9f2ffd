#pragma once

#include <Eigen/Dense>
#include <functional>

namespace maternpar {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
  double tol = 1e-5;      // stop: relative best-value change small
  int max_evals = 5000;
  double rho_begin = 0.1; // initial trust radius in box-scaled units
  double rho_end = 1e-9;  // radius floor (backstop)
  int stall_iters = 2;    // consecutive small-change iterations required
};

struct OptimResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Derivative-free bound-constrained minimization with a quadratic model
/// interpolated on m = 2p+1 points (minimum-Frobenius-norm Hessian updates)
/// and a trust-region step restricted to the box. Objective values at or
/// above `penalty_value` mark rejected points (infeasible covariances).
inline constexpr double kPenaltyValue = 1e15;

OptimResult minimize_quadratic_tr(const Objective& f, const Eigen::VectorXd& lo,
                                  const Eigen::VectorXd& hi,
                                  const Eigen::VectorXd& x0,
                                  const OptimOptions& opts = {});

/// Bounded Nelder-Mead (candidates clamped into the box); cross-check path.
OptimResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& lo,
                                 const Eigen::VectorXd& hi,
                                 const Eigen::VectorXd& x0,
                                 const OptimOptions& opts = {});

} // namespace maternpar
