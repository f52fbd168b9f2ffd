#pragma once

#include "maternpar/covariance.hpp"
#include "maternpar/likelihood.hpp"

#include <cstdint>
#include <vector>

namespace maternpar {

/// Tiled covariance: dense diagonal tiles, rank-truncated off-diagonal tiles.
/// Only the lower tiles are stored; the upper half mirrors on decompress.
struct TlrMatrix {
  struct LowRankTile {
    int bi, bj;        // tile block indices, bi > bj
    Eigen::MatrixXd u; // rows x rank (singular values folded in)
    Eigen::MatrixXd v; // cols x rank
    double fro_error;  // achieved truncation error, Frobenius
  };

  int n = 0;
  int nb = kDefaultTileSize;
  double eps = 0.0;
  bool relative = false;
  std::vector<Eigen::MatrixXd> diag;
  std::vector<LowRankTile> off;

  int rank(std::size_t k) const { return int(off[k].u.cols()); }
  int max_rank() const;
  /// Scalars held by the representation (dense diagonals + factor pairs).
  std::int64_t stored_scalars() const;
  std::int64_t dense_scalars() const { return std::int64_t(n) * n; }
  Eigen::MatrixXd decompress() const;
};

/// Truncated-SVD compression of each off-diagonal tile to the smallest rank
/// whose Frobenius reconstruction error meets eps (absolute by default;
/// relative mode compares against eps * ||tile||_F).
TlrMatrix compress(const Eigen::MatrixXd& cov, int nb, double eps,
                   bool relative = false);

/// Eq.-(4) log-likelihood on the recomposed matrix (accuracy semantics; the
/// dense path takes over after decompression).
double tlr_loglik(const TlrMatrix& tlr, const Eigen::VectorXd& z,
                  const MaternParams& params);

/// Same optimizer as `fit` with the compressed-covariance objective;
/// positive-definiteness failures during the search are rejected with a
/// penalty and counted in the result.
FitResult tlr_fit(const LocationSet& locs, const Eigen::VectorXd& z, Variant v,
                  const Bounds& bounds, double eps, int nb,
                  FitOptions opts = {});

} // namespace maternpar
