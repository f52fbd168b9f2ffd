#pragma once

#include "maternpar/fisher.hpp"
#include "maternpar/likelihood.hpp"
#include "maternpar/predict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace maternpar {

/// Purpose tags for replicate substreams.
enum : std::uint64_t {
  kStreamLocations = 1,
  kStreamField = 2,
  kStreamHoldout = 3,
};

/// z = L w with L the Cholesky factor of Sigma(theta) (nugget included) and
/// w standard-normal draws from the (seed, stream) Philox substream.
Eigen::VectorXd gen_field(const LocationSet& locs, const MaternParams& params,
                          std::uint64_t seed, std::uint64_t stream = 0);

struct StudyConfig {
  MaternParams truth{};           // generating parameters (fixes the variant)
  int n = 400;
  int replicates = 20;
  GridKind grid = GridKind::Perturbed;
  double delta = 1.0;
  std::uint64_t seed = 1;
  bool fit_nugget = false;        // include the nugget dimension in the fit
  double holdout = 0.2;           // fraction singled out for prediction
  double nominal_h = 0.0;         // effective-range lag for AER (0: skip)
  double tol = 1e-5;
  int max_evals = 5000;
  std::optional<double> tlr_eps;  // set: estimate under TLR compression
  int tlr_nb = kDefaultTileSize;
  int nb = kDefaultTileSize;
  int threads = 0;
  bool share_locations = false;   // one location set for all replicates
  bool compute_efficiency = true; // MLOE/MMOM per replicate
  bool compute_fisher = true;     // TAV at the truth, first replicate
};

struct ReplicateRecord {
  int replicate = 0;
  FitResult fit;
  double mspe = std::numeric_limits<double>::quiet_NaN();
  double mloe = std::numeric_limits<double>::quiet_NaN();
  double mmom = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  std::string error;
};

struct StudyResult {
  StudyConfig config;
  std::vector<ReplicateRecord> records;
  int p = 3;                 // free-parameter count
  Eigen::VectorXd mean;      // sample mean of the MLEs
  Eigen::VectorXd sv;        // sample variance of the MLEs
  Eigen::VectorXd dr;        // |mean - truth| / truth per parameter
  double aer = std::numeric_limits<double>::quiet_NaN();
  double mspe_median = std::numeric_limits<double>::quiet_NaN();
  double mloe_median = std::numeric_limits<double>::quiet_NaN();
  double mmom_median = std::numeric_limits<double>::quiet_NaN();
  double iterations_median = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd tav;       // from Fisher at the truth (NaN when skipped)
  Eigen::VectorXd drv;       // |SV - TAV| / TAV
  int failures = 0;
};

/// Runs fit (and optionally krige / mloe-mmom / fisher) over seeded
/// replicates; failures are logged per replicate and excluded from the
/// summaries. Deterministic in (config, seed) regardless of thread count.
StudyResult replicate_study(const StudyConfig& config);

double median(std::vector<double> values);

} // namespace maternpar
