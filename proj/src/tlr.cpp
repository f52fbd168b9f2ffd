#include "maternpar/tlr.hpp"
#include "maternpar/errors.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace maternpar {

int TlrMatrix::max_rank() const {
  int r = 0;
  for (const auto& t : off) r = std::max(r, int(t.u.cols()));
  return r;
}

std::int64_t TlrMatrix::stored_scalars() const {
  std::int64_t s = 0;
  for (const auto& d : diag) s += d.size();
  for (const auto& t : off) s += t.u.size() + t.v.size();
  return s;
}

Eigen::MatrixXd TlrMatrix::decompress() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  const int nt = (n + nb - 1) / nb;
  for (int b = 0; b < nt; ++b) {
    const int r0 = b * nb, sz = std::min(nb, n - r0);
    out.block(r0, r0, sz, sz) = diag[std::size_t(b)];
  }
  for (const auto& t : off) {
    const int r0 = t.bi * nb, c0 = t.bj * nb;
    const Eigen::MatrixXd block = t.u * t.v.transpose();
    out.block(r0, c0, block.rows(), block.cols()) = block;
    out.block(c0, r0, block.cols(), block.rows()) = block.transpose();
  }
  return out;
}

TlrMatrix compress(const Eigen::MatrixXd& cov, int nb, double eps,
                   bool relative) {
  if (cov.rows() != cov.cols())
    throw std::invalid_argument("compress: matrix must be square");
  if (nb <= 0) throw std::invalid_argument("compress: tile size must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("compress: eps must be > 0");

  TlrMatrix tlr;
  tlr.n = int(cov.rows());
  tlr.nb = nb;
  tlr.eps = eps;
  tlr.relative = relative;
  const int nt = (tlr.n + nb - 1) / nb;
  for (int b = 0; b < nt; ++b) {
    const int r0 = b * nb, sz = std::min(nb, tlr.n - r0);
    tlr.diag.push_back(cov.block(r0, r0, sz, sz));
  }
  for (int bi = 1; bi < nt; ++bi) {
    for (int bj = 0; bj < bi; ++bj) {
      const int r0 = bi * nb, c0 = bj * nb;
      const int rows = std::min(nb, tlr.n - r0), cols = std::min(nb, tlr.n - c0);
      const Eigen::MatrixXd tile = cov.block(r0, c0, rows, cols);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(
          tile, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd& sv = svd.singularValues();
      const double bound = relative ? eps * tile.norm() : eps;
      // tail_k = ||tile - tile_k||_F = sqrt(sum_{i>k} sv_i^2); smallest rank
      // whose tail meets the bound (rank 0 allowed).
      const int kmax = int(sv.size());
      double tail2 = sv.squaredNorm();
      int rank = 0;
      while (rank < kmax && std::sqrt(std::max(tail2, 0.0)) > bound) {
        tail2 -= sv[rank] * sv[rank];
        ++rank;
      }
      TlrMatrix::LowRankTile t;
      t.bi = bi;
      t.bj = bj;
      t.u = svd.matrixU().leftCols(rank) * sv.head(rank).asDiagonal();
      t.v = svd.matrixV().leftCols(rank);
      t.fro_error = std::sqrt(std::max(tail2, 0.0));
      tlr.off.push_back(std::move(t));
    }
  }
  return tlr;
}

double tlr_loglik(const TlrMatrix& tlr, const Eigen::VectorXd& z,
                  const MaternParams& params) {
  CovMatrix cov(tlr.decompress(), params);
  return loglik(cov, z);
}

FitResult tlr_fit(const LocationSet& locs, const Eigen::VectorXd& z, Variant v,
                  const Bounds& bounds, double eps, int nb, FitOptions opts) {
  opts.tlr_eps = eps;
  opts.tlr_nb = nb;
  return fit(locs, z, v, bounds, opts);
}

} // namespace maternpar
