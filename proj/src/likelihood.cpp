#include "maternpar/likelihood.hpp"
#include "maternpar/errors.hpp"
#include "maternpar/tlr.hpp"

#include <cmath>

namespace maternpar {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

double scale_factor(double v) {
  if (v < 2.0) return 1.0;
  if (v < 20.0) return 10.0;
  if (v < 50.0) return 20.0;
  if (v < 500.0) return 200.0;
  return 1000.0;
}
} // namespace

Bounds default_bounds(int p) {
  Bounds b;
  b.lo = Eigen::VectorXd::Constant(p, 0.01);
  b.hi = Eigen::VectorXd::Constant(p, 5.0);
  return b;
}

Bounds scale_bounds(const MaternParams& truth_or_guess, bool include_nugget) {
  validate(truth_or_guess);
  const int p = include_nugget ? 4 : 3;
  Bounds b = default_bounds(p);
  for (int i = 0; i < p; ++i) {
    const double f = scale_factor(truth_or_guess.theta[i]);
    b.lo[i] *= f;
    b.hi[i] *= f;
  }
  return b;
}

double loglik(const CovMatrix& cov, const Eigen::VectorXd& z) {
  const int n = cov.n();
  if (z.size() != n)
    throw std::invalid_argument("loglik: observation length mismatch");
  const auto& llt = cov.factor();
  const double logdet =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const Eigen::VectorXd y = llt.matrixL().solve(z);
  return -0.5 * logdet - 0.5 * y.squaredNorm() - 0.5 * n * kLog2Pi;
}

Eigen::VectorXd score(const CovMatrix& cov,
                      const std::vector<Eigen::MatrixXd>& derivs,
                      const Eigen::VectorXd& z) {
  const auto& llt = cov.factor();
  const Eigen::VectorXd u = llt.solve(z);
  Eigen::VectorXd g(derivs.size());
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    const Eigen::MatrixXd w = llt.solve(derivs[k]);
    g[int(k)] = -0.5 * w.trace() + 0.5 * u.dot(derivs[k] * u);
  }
  return g;
}

MaternParams log_midpoint_start(Variant v, const Bounds& bounds,
                                bool include_nugget) {
  Eigen::Vector4d theta;
  theta.setZero();
  for (int i = 0; i < bounds.p(); ++i)
    theta[i] = std::sqrt(bounds.lo[i] * bounds.hi[i]);
  if (!include_nugget) theta[3] = 0.0;
  return make_params(v, theta);
}

FitResult fit(const LocationSet& locs, const Eigen::VectorXd& z, Variant v,
              const Bounds& bounds, const MaternParams& start,
              const FitOptions& opts) {
  const int p = opts.include_nugget ? 4 : 3;
  if (bounds.p() != p)
    throw std::invalid_argument("fit: bounds size must match free parameters");
  for (int i = 0; i < p; ++i) {
    if (!(bounds.lo[i] < bounds.hi[i]))
      throw std::invalid_argument("fit: bounds must satisfy lo < hi");
    if (!(start.theta[i] > bounds.lo[i] && start.theta[i] < bounds.hi[i]))
      throw std::invalid_argument("fit: start must lie strictly inside bounds");
  }

  FitResult out;
  auto objective = [&](const Eigen::VectorXd& x) -> double {
    Eigen::Vector4d theta;
    theta << x[0], x[1], x[2], (p == 4 ? x[3] : 0.0);
    double ll;
    try {
      const MaternParams cand = make_params(v, theta);
      if (opts.tlr_eps) {
        const CovMatrix cov = assemble(locs, cand, opts.tlr_nb, opts.threads);
        const TlrMatrix tlr =
            compress(cov.matrix(), opts.tlr_nb, *opts.tlr_eps, opts.tlr_relative);
        ll = tlr_loglik(tlr, z, cand);
      } else {
        ll = loglik(assemble(locs, cand, opts.nb, opts.threads), z);
      }
    } catch (const NotPositiveDefiniteError&) {
      ++out.pd_failures;
      return kPenaltyValue;
    } catch (const std::overflow_error&) {
      ++out.pd_failures;
      return kPenaltyValue;
    }
    if (opts.record_trace) out.trace.push_back({theta, ll});
    return -ll;
  };

  OptimOptions oo;
  oo.tol = opts.tol;
  oo.max_evals = opts.max_evals;
  const Eigen::VectorXd x0 = start.theta.head(p);
  const OptimResult r =
      opts.nelder_mead
          ? minimize_nelder_mead(objective, bounds.lo, bounds.hi, x0, oo)
          : minimize_quadratic_tr(objective, bounds.lo, bounds.hi, x0, oo);

  Eigen::Vector4d theta;
  theta << r.x[0], r.x[1], r.x[2], (p == 4 ? r.x[3] : 0.0);
  out.mle = make_params(v, theta);
  out.loglik = -r.f;
  out.iterations = r.evals;
  out.converged = r.converged && r.f < 0.5 * kPenaltyValue;
  for (int i = 0; i < p; ++i) {
    const double span = bounds.hi[i] - bounds.lo[i];
    if (r.x[i] - bounds.lo[i] < 1e-6 * span || bounds.hi[i] - r.x[i] < 1e-6 * span)
      out.at_bound = true;
  }
  return out;
}

FitResult fit(const LocationSet& locs, const Eigen::VectorXd& z, Variant v,
              const Bounds& bounds, const FitOptions& opts) {
  return fit(locs, z, v, bounds,
             log_midpoint_start(v, bounds, opts.include_nugget), opts);
}

} // namespace maternpar
