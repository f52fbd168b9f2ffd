#include "maternpar/fisher.hpp"
#include "maternpar/errors.hpp"
#include "maternpar/threads.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace maternpar {

FisherMatrix fisher(const LocationSet& locs, const MaternParams& params,
                    bool include_nugget, int nb, int threads) {
  validate(params);
  const int p = include_nugget ? 4 : 3;
  const CovMatrix cov = assemble(locs, params, nb, threads);
  const auto& llt = cov.factor();

  std::vector<Eigen::MatrixXd> w(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    w[std::size_t(i)] = assemble_derivative(locs, params, i, nb, threads);
    llt.matrixL().solveInPlace(w[std::size_t(i)]);
    llt.matrixU().solveInPlace(w[std::size_t(i)]);
  }

  FisherMatrix fim;
  fim.info.resize(p, p);
  fim.variant = params.variant;
  fim.params = params;
  fim.nugget = include_nugget;
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      // tr(W_i W_j) without the product matrix
      const double t =
          (w[std::size_t(i)].array() * w[std::size_t(j)].transpose().array())
              .sum();
      fim.info(i, j) = fim.info(j, i) = 0.5 * t;
    }
  return fim;
}

FisherMatrix transform_fisher(const FisherMatrix& fim, Variant target) {
  const Eigen::Matrix4d j4 = jacobian(fim.variant, target, fim.params);
  const int p = fim.p();
  const Eigen::MatrixXd j = j4.topLeftCorner(p, p);
  FisherMatrix out;
  out.info = j.transpose() * fim.info * j;
  out.variant = target;
  out.params = convert(fim.params, target);
  out.nugget = fim.nugget;
  return out;
}

AsymptoticsReport asymptotics(const FisherMatrix& fim) {
  AsymptoticsReport rep;
  const int p = fim.p();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fim.info);
  const double lmax = es.eigenvalues().maxCoeff();
  const double lmin = es.eigenvalues().minCoeff();
  rep.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(lmin > 0.0) || !std::isfinite(rep.condition)) {
    rep.ok = false;
    rep.tav = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::quiet_NaN());
    rep.corr = Eigen::MatrixXd::Constant(p, p, std::numeric_limits<double>::quiet_NaN());
    return rep;
  }
  const Eigen::MatrixXd inv = fim.info.inverse();
  rep.tav = inv.diagonal();
  rep.corr.resize(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      rep.corr(i, j) = inv(i, j) / std::sqrt(rep.tav[i] * rep.tav[j]);
  return rep;
}

double drv(double sample_variance, double tav) {
  if (!(tav > 0.0)) throw std::domain_error("drv: TAV must be positive");
  return std::abs(sample_variance - tav) / tav;
}

} // namespace maternpar
