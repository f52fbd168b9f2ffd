#pragma once

#include "maternpar/covariance.hpp"
#include "maternpar/optimize.hpp"

#include <optional>
#include <vector>

namespace maternpar {

/// Per-parameter box constraints in the variant's fixed parameter order;
/// size 3 (no nugget) or 4 (nugget free).
struct Bounds {
  Eigen::VectorXd lo, hi;
  int p() const { return int(lo.size()); }
};

/// The default optimization interval (0.01, 5) scaled per parameter value:
/// < 2 keeps the default, [2,20) scales by 10, [20,50) by 20, [50,500) by
/// 200, and >= 500 by 1000.
Bounds scale_bounds(const MaternParams& truth_or_guess, bool include_nugget);
Bounds default_bounds(int p);

struct TracePoint {
  Eigen::Vector4d theta;
  double loglik;
};

struct FitResult {
  MaternParams mle{};
  double loglik = 0.0;
  int iterations = 0; // objective evaluations ("convergent iterations")
  bool converged = false;
  bool at_bound = false;
  int pd_failures = 0;
  std::vector<TracePoint> trace;
};

struct FitOptions {
  double tol = 1e-5;
  int max_evals = 5000;
  bool include_nugget = false;
  bool nelder_mead = false;
  int nb = kDefaultTileSize;
  int threads = 0;
  bool record_trace = false;
  // set to run the optimizer on the tile-low-rank objective
  std::optional<double> tlr_eps;
  int tlr_nb = kDefaultTileSize;
  bool tlr_relative = false;
};

/// Exact Gaussian log-likelihood via the Cholesky factor:
/// -1/2 log|Sigma| - 1/2 z^T Sigma^{-1} z - n/2 log(2 pi).
double loglik(const CovMatrix& cov, const Eigen::VectorXd& z);

/// Analytic score (testing/diagnostics); derivs in the fixed parameter order.
Eigen::VectorXd score(const CovMatrix& cov,
                      const std::vector<Eigen::MatrixXd>& derivs,
                      const Eigen::VectorXd& z);

/// Default start: per-parameter midpoint of the bounds in log space.
MaternParams log_midpoint_start(Variant v, const Bounds& bounds,
                                bool include_nugget);

/// Maximize loglik(assemble(locs, theta), z) over the box with the
/// derivative-free quadratic trust-region optimizer. Covariances that fail
/// positive definiteness are rejected with a penalty and counted.
FitResult fit(const LocationSet& locs, const Eigen::VectorXd& z, Variant v,
              const Bounds& bounds, const MaternParams& start,
              const FitOptions& opts = {});
FitResult fit(const LocationSet& locs, const Eigen::VectorXd& z, Variant v,
              const Bounds& bounds, const FitOptions& opts = {});

} // namespace maternpar
