#include "maternpar/covariance.hpp"
#include "maternpar/errors.hpp"
#include "maternpar/threads.hpp"

#include <cmath>
#include <vector>

namespace maternpar {

int failing_minor(const Eigen::MatrixXd& sym) {
  const int n = int(sym.rows());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = sym(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0) || !std::isfinite(d)) return j + 1;
    d = std::sqrt(d);
    l(j, j) = d;
    for (int i = j + 1; i < n; ++i)
      l(i, j) = (sym(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / d;
  }
  return 0;
}

const Eigen::LLT<Eigen::MatrixXd>& CovMatrix::factor() const {
  if (!llt_) {
    auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(m_);
    if (llt->info() != Eigen::Success)
      throw NotPositiveDefiniteError(failing_minor(m_), "covariance Cholesky");
    llt_ = std::move(llt);
  }
  return *llt_;
}

namespace {

struct Tile {
  int r0, c0, rows, cols;
};

std::vector<Tile> lower_tiles(int n, int nb) {
  std::vector<Tile> tiles;
  for (int r0 = 0; r0 < n; r0 += nb)
    for (int c0 = 0; c0 <= r0; c0 += nb)
      tiles.push_back({r0, c0, std::min(nb, n - r0), std::min(nb, n - c0)});
  return tiles;
}

template <class Entry>
Eigen::MatrixXd fill_symmetric(const LocationSet& locs, int nb, int threads,
                               const Entry& entry) {
  const int n = locs.n();
  Eigen::MatrixXd out(n, n);
  const auto tiles = lower_tiles(n, nb <= 0 ? kDefaultTileSize : nb);
  parallel_for(std::int64_t(tiles.size()), threads, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t t = b; t < e; ++t) {
      const Tile& tl = tiles[std::size_t(t)];
      for (int i = tl.r0; i < tl.r0 + tl.rows; ++i) {
        const int jmax = std::min(i, tl.c0 + tl.cols - 1);
        for (int j = tl.c0; j <= jmax; ++j) {
          const double dx = locs.pts(i, 0) - locs.pts(j, 0);
          const double dy = locs.pts(i, 1) - locs.pts(j, 1);
          out(i, j) = entry(i == j ? 0.0 : std::sqrt(dx * dx + dy * dy));
        }
      }
    }
  });
  out.template triangularView<Eigen::StrictlyUpper>() =
      out.transpose().template triangularView<Eigen::StrictlyUpper>();
  return out;
}

} // namespace

CovMatrix assemble(const LocationSet& locs, const MaternParams& params,
                   int nb, int threads) {
  validate(params);
  Eigen::MatrixXd sigma = fill_symmetric(
      locs, nb, threads, [&](double h) { return matern_eval(params, h); });
  return CovMatrix(std::move(sigma), params);
}

Eigen::MatrixXd assemble_derivative(const LocationSet& locs,
                                    const MaternParams& params, int index,
                                    int nb, int threads) {
  validate(params);
  return fill_symmetric(locs, nb, threads,
                        [&](double h) { return matern_deriv(params, h, index); });
}

Eigen::MatrixXd cross_covariance(const LocationSet& rows,
                                 const LocationSet& cols,
                                 const MaternParams& params) {
  validate(params);
  Eigen::MatrixXd out(rows.n(), cols.n());
  for (int i = 0; i < rows.n(); ++i)
    for (int j = 0; j < cols.n(); ++j) {
      const double dx = rows.pts(i, 0) - cols.pts(j, 0);
      const double dy = rows.pts(i, 1) - cols.pts(j, 1);
      out(i, j) = matern_eval(params, std::sqrt(dx * dx + dy * dy));
    }
  return out;
}

} // namespace maternpar
