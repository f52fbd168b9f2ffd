#pragma once

#include "maternpar/covariance.hpp"

namespace maternpar {

/// p x p information matrix (p = 3, or 4 with the nugget) in the variant's
/// fixed parameter order.
struct FisherMatrix {
  Eigen::MatrixXd info;
  Variant variant = Variant::M1;
  MaternParams params{};
  bool nugget = false;
  int p() const { return int(info.rows()); }
};

struct AsymptoticsReport {
  Eigen::VectorXd tav;   // diagonal of I^{-1}
  Eigen::MatrixXd corr;  // correlation matrix of the MLEs
  double condition = 0.0;
  bool ok = true;        // false when I is numerically singular
};

/// I_ij = 1/2 tr(Sigma^{-1} Sigma_i Sigma^{-1} Sigma_j): one Cholesky, two
/// triangular solves per derivative matrix, pairwise traces over j >= i.
/// The trace is taken on the two solved intermediates without forming the
/// product matrix.
FisherMatrix fisher(const LocationSet& locs, const MaternParams& params,
                    bool include_nugget, int nb = kDefaultTileSize,
                    int threads = 0);

/// Congruence transport I(theta_m) = J^T I(theta_k) J with the link-function
/// Jacobian; parameters converted alongside.
FisherMatrix transform_fisher(const FisherMatrix& fim, Variant target);

/// TAV_i = (I^{-1})_ii and Corr_ij = (I^{-1})_ij / sqrt(TAV_i TAV_j).
AsymptoticsReport asymptotics(const FisherMatrix& fim);

/// |SV - TAV| / TAV, the paper's uncertainty-quantification discrepancy.
double drv(double sample_variance, double tav);

} // namespace maternpar
