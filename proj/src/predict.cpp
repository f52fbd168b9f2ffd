#include "maternpar/predict.hpp"
#include "maternpar/errors.hpp"

#include <cmath>

namespace maternpar {

namespace {

// LLT solve with one step of iterative refinement; the extra n^2 work keeps
// the plug-in identities (e.g. LOE = 0 at theta_hat = theta) at machine zero.
Eigen::MatrixXd refined_solve(const Eigen::LLT<Eigen::MatrixXd>& llt,
                              const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd x = llt.solve(b);
  x += llt.solve(b - a * x);
  return x;
}

} // namespace

PredictionReport krige(const LocationSet& obs_locs, const Eigen::VectorXd& obs_z,
                       const LocationSet& target_locs, const MaternParams& params,
                       const std::optional<Eigen::VectorXd>& truth) {
  if (obs_z.size() != obs_locs.n())
    throw std::invalid_argument("krige: observation length mismatch");
  const CovMatrix cov22 = assemble(obs_locs, params);
  const auto& llt = cov22.factor();
  const Eigen::MatrixXd cross = cross_covariance(target_locs, obs_locs, params);
  const Eigen::MatrixXd a = llt.solve(cross.transpose()); // n x m
  const double k0 = matern_eval(params, 0.0);

  PredictionReport rep;
  rep.pred = cross * llt.solve(obs_z);
  rep.variance.resize(target_locs.n());
  for (int i = 0; i < target_locs.n(); ++i) {
    const double v = k0 - cross.row(i).dot(a.col(i));
    rep.variance[i] = std::max(v, 0.0);
  }
  if (truth) {
    if (truth->size() != target_locs.n())
      throw std::invalid_argument("krige: truth length mismatch");
    rep.mspe = (rep.pred - *truth).squaredNorm() / double(target_locs.n());
  }
  return rep;
}

EfficiencyReport mloe_mmom(const LocationSet& obs_locs,
                           const LocationSet& target_locs,
                           const MaternParams& theta_true,
                           const MaternParams& theta_hat) {
  const CovMatrix k_true = assemble(obs_locs, theta_true);
  const CovMatrix k_hat = assemble(obs_locs, theta_hat);
  const auto& llt_true = k_true.factor();
  const auto& llt_hat = k_hat.factor();

  const Eigen::MatrixXd kt =
      cross_covariance(obs_locs, target_locs, theta_true); // n x m
  const Eigen::MatrixXd kh = cross_covariance(obs_locs, target_locs, theta_hat);
  const Eigen::MatrixXd a = refined_solve(llt_hat, k_hat.matrix(), kh);
  const Eigen::MatrixXd b = refined_solve(llt_true, k_true.matrix(), kt);
  const Eigen::MatrixXd ka = k_true.matrix() * a;

  const double k0_true = matern_eval(theta_true, 0.0);
  const double k0_hat = matern_eval(theta_hat, 0.0);
  const int m = target_locs.n();

  EfficiencyReport rep;
  rep.loe.resize(m);
  rep.mom.resize(m);
  for (int i = 0; i < m; ++i) {
    const double et_et = k0_true - kt.col(i).dot(b.col(i));
    const double et_ea =
        k0_true - 2.0 * kt.col(i).dot(a.col(i)) + a.col(i).dot(ka.col(i));
    const double ea_ea = k0_hat - kh.col(i).dot(a.col(i));
    rep.loe[i] = et_ea / et_et - 1.0;
    rep.mom[i] = ea_ea / et_ea - 1.0;
  }
  rep.mloe = rep.loe.mean();
  rep.mmom = rep.mom.mean();
  return rep;
}

double dr(double estimate_mean, double truth) {
  if (truth == 0.0) throw std::domain_error("dr: truth must be nonzero");
  return std::abs(estimate_mean - truth) / std::abs(truth);
}

double aer(const MaternParams& params_hat, double nominal_h) {
  return matern_eval(params_hat, nominal_h);
}

} // namespace maternpar
