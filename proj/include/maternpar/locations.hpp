#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace maternpar {

/// Planar coordinates; point order is the covariance row/column order.
struct LocationSet {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts;
  int n() const { return int(pts.rows()); }
};

enum class GridKind { Regular, Perturbed };

/// n must be a perfect square for grid generation (both kinds use a
/// sqrt(n) x sqrt(n) layout). delta multiplies both coordinates.
struct GridSpec {
  int n = 400;
  GridKind kind = GridKind::Perturbed;
  double delta = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Centered grid (i - 0.5)/sqrt(n); the perturbed kind jitters each
/// coordinate by 0.5 * unif(-0.4, 0.4) cells, independently per point and
/// coordinate, so points stay strictly inside the (scaled) unit square.
LocationSet gen_locations(const GridSpec& spec);

Eigen::MatrixXd pairwise_distances(const LocationSet& locs);

/// Distances between two location sets (rows: a, cols: b).
Eigen::MatrixXd cross_distances(const LocationSet& a, const LocationSet& b);

} // namespace maternpar
