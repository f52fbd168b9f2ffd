#pragma once

#include "maternpar/covariance.hpp"

#include <optional>

namespace maternpar {

struct PredictionReport {
  Eigen::VectorXd pred;      // posterior means at the target locations
  Eigen::VectorXd variance;  // per-location prediction variances
  std::optional<double> mspe; // present when the truth was supplied
};

struct EfficiencyReport {
  double mloe = 0.0;
  double mmom = 0.0;
  Eigen::VectorXd loe;
  Eigen::VectorXd mom;
};

/// Simple kriging (zero mean): E(Z1 | Z2 = z) = Sigma_12 Sigma_22^{-1} z and
/// variance diag(Sigma_11 - Sigma_12 Sigma_22^{-1} Sigma_21).
PredictionReport krige(const LocationSet& obs_locs, const Eigen::VectorXd& obs_z,
                       const LocationSet& target_locs, const MaternParams& params,
                       const std::optional<Eigen::VectorXd>& truth = std::nullopt);

/// Covariance-based plug-in LOE/MOM per target and their means.
EfficiencyReport mloe_mmom(const LocationSet& obs_locs,
                           const LocationSet& target_locs,
                           const MaternParams& theta_true,
                           const MaternParams& theta_hat);

/// Difference ratio |estimate_mean - truth| / |truth|.
double dr(double estimate_mean, double truth);

/// Covariance at the nominal effective range under the estimated parameters
/// (ideal value: the calibration level, 0.05).
double aer(const MaternParams& params_hat, double nominal_h);

} // namespace maternpar
