#include "maternpar/sim.hpp"
#include "maternpar/rng.hpp"
#include "maternpar/threads.hpp"
#include "maternpar/tlr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maternpar {

Eigen::VectorXd gen_field(const LocationSet& locs, const MaternParams& params,
                          std::uint64_t seed, std::uint64_t stream) {
  const CovMatrix cov = assemble(locs, params);
  const auto& llt = cov.factor();
  RngStream rng(seed, stream);
  Eigen::VectorXd w(locs.n());
  for (int i = 0; i < locs.n(); ++i) w[i] = rng.normal();
  return llt.matrixL() * w;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

namespace {

std::vector<int> holdout_indices(int n, double fraction, std::uint64_t seed,
                                 std::uint64_t stream) {
  const int m = int(std::lround(fraction * n));
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  RngStream rng(seed, stream);
  for (int i = 0; i < m; ++i) { // partial Fisher-Yates
    const int j = i + int(rng.uniform() * double(n - i));
    std::swap(idx[std::size_t(i)], idx[std::size_t(std::min(j, n - 1))]);
  }
  idx.resize(std::size_t(m));
  std::sort(idx.begin(), idx.end());
  return idx;
}

void split(const LocationSet& locs, const Eigen::VectorXd& z,
           const std::vector<int>& targets, LocationSet& obs_locs,
           Eigen::VectorXd& obs_z, LocationSet& tgt_locs,
           Eigen::VectorXd& tgt_z) {
  const int n = locs.n(), m = int(targets.size());
  obs_locs.pts.resize(n - m, 2);
  obs_z.resize(n - m);
  tgt_locs.pts.resize(m, 2);
  tgt_z.resize(m);
  int oi = 0, ti = 0;
  std::size_t next = 0;
  for (int i = 0; i < n; ++i) {
    if (next < targets.size() && targets[next] == i) {
      tgt_locs.pts.row(ti) = locs.pts.row(i);
      tgt_z[ti++] = z[i];
      ++next;
    } else {
      obs_locs.pts.row(oi) = locs.pts.row(i);
      obs_z[oi++] = z[i];
    }
  }
}

} // namespace

StudyResult replicate_study(const StudyConfig& config) {
  validate(config.truth);
  StudyResult out;
  out.config = config;
  out.p = config.fit_nugget ? 4 : 3;
  out.records.resize(std::size_t(config.replicates));

  const Bounds bounds = scale_bounds(config.truth, config.fit_nugget);
  FitOptions fopts;
  fopts.tol = config.tol;
  fopts.max_evals = config.max_evals;
  fopts.include_nugget = config.fit_nugget;
  fopts.nb = config.nb;
  fopts.threads = 1; // replicates carry the parallelism
  fopts.tlr_eps = config.tlr_eps;
  fopts.tlr_nb = config.tlr_nb;

  parallel_for(config.replicates, config.threads, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t r = b; r < e; ++r) {
      ReplicateRecord& rec = out.records[std::size_t(r)];
      rec.replicate = int(r);
      try {
        GridSpec gs{config.n, config.grid, config.delta, config.seed,
                    substream(config.share_locations ? 0 : std::uint64_t(r),
                              kStreamLocations)};
        const LocationSet locs = gen_locations(gs);
        const Eigen::VectorXd z =
            gen_field(locs, config.truth, config.seed,
                      substream(std::uint64_t(r), kStreamField));

        rec.fit = fit(locs, z, config.truth.variant, bounds, fopts);

        if (config.holdout > 0.0) {
          const auto targets =
              holdout_indices(config.n, config.holdout, config.seed,
                              substream(std::uint64_t(r), kStreamHoldout));
          LocationSet obs_locs, tgt_locs;
          Eigen::VectorXd obs_z, tgt_z;
          split(locs, z, targets, obs_locs, obs_z, tgt_locs, tgt_z);
          const PredictionReport pr =
              krige(obs_locs, obs_z, tgt_locs, rec.fit.mle, tgt_z);
          rec.mspe = *pr.mspe;
          if (config.compute_efficiency) {
            const EfficiencyReport er =
                mloe_mmom(obs_locs, tgt_locs, config.truth, rec.fit.mle);
            rec.mloe = er.mloe;
            rec.mmom = er.mmom;
          }
        }
        rec.ok = true;
      } catch (const std::exception& ex) {
        rec.ok = false;
        rec.error = ex.what();
      }
    }
  });

  // summaries over successful replicates
  const int p = out.p;
  out.mean = Eigen::VectorXd::Zero(p);
  out.sv = Eigen::VectorXd::Zero(p);
  out.dr = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> mspes, mloes, mmoms, iters;
  int ok_count = 0;
  for (const auto& rec : out.records) {
    if (!rec.ok) {
      ++out.failures;
      continue;
    }
    ++ok_count;
    out.mean += rec.fit.mle.theta.head(p);
    if (!std::isnan(rec.mspe)) mspes.push_back(rec.mspe);
    if (!std::isnan(rec.mloe)) mloes.push_back(rec.mloe);
    if (!std::isnan(rec.mmom)) mmoms.push_back(rec.mmom);
    iters.push_back(double(rec.fit.iterations));
  }
  if (ok_count > 0) {
    out.mean /= double(ok_count);
    for (const auto& rec : out.records)
      if (rec.ok)
        out.sv += (rec.fit.mle.theta.head(p) - out.mean).cwiseAbs2();
    out.sv /= std::max(1.0, double(ok_count - 1));
    for (int i = 0; i < p; ++i)
      out.dr[i] = dr(out.mean[i], config.truth.theta[i]);
    if (config.nominal_h > 0.0) {
      MaternParams mean_params = config.truth;
      mean_params.theta.head(p) = out.mean;
      out.aer = aer(mean_params, config.nominal_h);
    }
  }
  out.mspe_median = median(mspes);
  out.mloe_median = median(mloes);
  out.mmom_median = median(mmoms);
  out.iterations_median = median(iters);

  out.tav = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::quiet_NaN());
  out.drv = out.tav;
  if (config.compute_fisher) {
    GridSpec gs{config.n, config.grid, config.delta, config.seed,
                substream(0, kStreamLocations)};
    const LocationSet locs0 = gen_locations(gs);
    const AsymptoticsReport rep = asymptotics(
        fisher(locs0, config.truth, config.fit_nugget, config.nb, config.threads));
    if (rep.ok) {
      out.tav = rep.tav;
      for (int i = 0; i < p; ++i)
        if (ok_count > 1) out.drv[i] = drv(out.sv[i], out.tav[i]);
    }
  }
  return out;
}

} // namespace maternpar
