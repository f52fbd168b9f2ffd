#include "maternpar/locations.hpp"
#include "maternpar/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace maternpar {

LocationSet gen_locations(const GridSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("gen_locations: n must be >= 4");
  const int side = int(std::llround(std::sqrt(double(spec.n))));
  if (side * side != spec.n)
    throw std::invalid_argument("gen_locations: n must be a perfect square");
  if (!(spec.delta > 0.0))
    throw std::invalid_argument("gen_locations: delta must be > 0");

  LocationSet out;
  out.pts.resize(spec.n, 2);
  RngStream rng(spec.seed, spec.stream);
  const double inv = 1.0 / double(side);
  int row = 0;
  for (int i = 1; i <= side; ++i) {
    for (int j = 1; j <= side; ++j, ++row) {
      double ox = 0.0, oy = 0.0;
      if (spec.kind == GridKind::Perturbed) {
        ox = 0.5 * rng.uniform(-0.4, 0.4);
        oy = 0.5 * rng.uniform(-0.4, 0.4);
      }
      out.pts(row, 0) = spec.delta * (double(i) - 0.5 + ox) * inv;
      out.pts(row, 1) = spec.delta * (double(j) - 0.5 + oy) * inv;
    }
  }
  return out;
}

Eigen::MatrixXd pairwise_distances(const LocationSet& locs) {
  const int n = locs.n();
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int j = 0; j < i; ++j) {
      const double dx = locs.pts(i, 0) - locs.pts(j, 0);
      const double dy = locs.pts(i, 1) - locs.pts(j, 1);
      d(i, j) = d(j, i) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return d;
}

Eigen::MatrixXd cross_distances(const LocationSet& a, const LocationSet& b) {
  Eigen::MatrixXd d(a.n(), b.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < b.n(); ++j) {
      const double dx = a.pts(i, 0) - b.pts(j, 0);
      const double dy = a.pts(i, 1) - b.pts(j, 1);
      d(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  return d;
}

} // namespace maternpar
