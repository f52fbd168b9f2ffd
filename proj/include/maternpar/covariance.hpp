#pragma once

#include "maternpar/locations.hpp"
#include "maternpar/matern.hpp"

#include <Eigen/Cholesky>
#include <memory>

namespace maternpar {

/// Default tile edge for tiled assembly (a parallelization unit only; the
/// numbers are identical for every tile schedule).
inline constexpr int kDefaultTileSize = 50;

/// Dense symmetric covariance with a lazily built Cholesky factor.
class CovMatrix {
public:
  CovMatrix() = default;
  CovMatrix(Eigen::MatrixXd sigma, MaternParams params)
      : m_(std::move(sigma)), params_(params) {}

  const Eigen::MatrixXd& matrix() const { return m_; }
  const MaternParams& params() const { return params_; }
  int n() const { return int(m_.rows()); }

  /// Cholesky factor; throws NotPositiveDefiniteError naming the leading
  /// minor on failure.
  const Eigen::LLT<Eigen::MatrixXd>& factor() const;

private:
  Eigen::MatrixXd m_;
  MaternParams params_{};
  mutable std::shared_ptr<Eigen::LLT<Eigen::MatrixXd>> llt_;
};

/// Locate the first non-positive pivot of a failed factorization (1-based
/// order of the offending leading minor).
int failing_minor(const Eigen::MatrixXd& sym);

/// Sigma_{ij} = M(||s_i - s_j||; theta), assembled tile by tile.
CovMatrix assemble(const LocationSet& locs, const MaternParams& params,
                   int nb = kDefaultTileSize, int threads = 0);

/// Entrywise analytic derivative dSigma/d(theta_index) per (S1)-(S10).
Eigen::MatrixXd assemble_derivative(const LocationSet& locs,
                                    const MaternParams& params, int index,
                                    int nb = kDefaultTileSize, int threads = 0);

/// Cross-covariance block between two location sets under one parameter set.
Eigen::MatrixXd cross_covariance(const LocationSet& rows,
                                 const LocationSet& cols,
                                 const MaternParams& params);

} // namespace maternpar
