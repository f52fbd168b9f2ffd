#include "maternpar/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace maternpar {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// All internal coordinates are box-scaled: u = (x - lo) / (hi - lo) in [0,1].
struct Scaler {
  VectorXd lo, span;
  VectorXd to_x(const VectorXd& u) const { return lo + span.cwiseProduct(u); }
};

double quad_value(const VectorXd& g, const MatrixXd& h, const VectorXd& s) {
  return g.dot(s) + 0.5 * s.dot(h * s);
}

// Largest t in [0, t_max] keeping u + s + t*d inside [0,1]^p and
// ||s + t*d|| <= del.
double max_feasible_step(const VectorXd& u, const VectorXd& s, const VectorXd& d,
                         double del, double t_max) {
  double t = t_max;
  for (int i = 0; i < u.size(); ++i) {
    if (d[i] > 0.0) t = std::min(t, (1.0 - u[i] - s[i]) / d[i]);
    else if (d[i] < 0.0) t = std::min(t, (0.0 - u[i] - s[i]) / d[i]);
  }
  const double a = d.squaredNorm();
  if (a > 0.0) {
    const double b = 2.0 * s.dot(d);
    const double c = s.squaredNorm() - del * del;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double root = (-b + std::sqrt(disc)) / (2.0 * a);
      if (root >= 0.0) t = std::min(t, root);
    }
  }
  return std::max(t, 0.0);
}

// Approximate minimizer of the model over box-intersected trust region:
// regularized Newton seed plus projected-gradient polish with exact line
// search; guarantees at least Cauchy decrease.
VectorXd solve_subproblem(const VectorXd& g, const MatrixXd& h,
                          const VectorXd& u, double del) {
  const int p = int(g.size());
  VectorXd best = VectorXd::Zero(p);
  double best_q = 0.0;

  auto consider = [&](const VectorXd& cand) {
    const double q = quad_value(g, h, cand);
    if (q < best_q) {
      best_q = q;
      best = cand;
    }
  };

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  const double lmin = es.eigenvalues().minCoeff();
  const double shift = lmin < 1e-10 ? (1e-10 - lmin) : 0.0;
  VectorXd sn = -(h + shift * MatrixXd::Identity(p, p)).ldlt().solve(g);
  if (sn.allFinite() && sn.norm() > 0.0) {
    const double t = max_feasible_step(u, VectorXd::Zero(p), sn, del, 1.0);
    consider(t * sn);
  }

  VectorXd s = best;
  for (int it = 0; it < 12 * p; ++it) {
    VectorXd d = -(g + h * s);
    for (int i = 0; i < p; ++i) { // drop directions pushing out of the box
      const double ui = u[i] + s[i];
      if ((ui <= 1e-12 && d[i] < 0.0) || (ui >= 1.0 - 1e-12 && d[i] > 0.0))
        d[i] = 0.0;
    }
    const double dn = d.norm();
    if (dn < 1e-14) break;
    const double curv = d.dot(h * d);
    double t_star = curv > 0.0 ? -(g + h * s).dot(d) / curv
                               : std::numeric_limits<double>::infinity();
    if (!(t_star > 0.0)) t_star = del / dn;
    const double t = max_feasible_step(u, s, d, del, t_star);
    if (t <= 0.0) break;
    s += t * d;
    consider(s);
  }
  return best;
}

struct Model {
  VectorXd g;
  MatrixXd h;
  bool ok = false;
};

// Minimum-Frobenius-norm quadratic interpolation around the incumbent
// (offsets y_i): solve [A X; X^T 0][lambda; c g] = [f - 1/2 y^T Hprev y; 0],
// H = Hprev + sum lambda_i y_i y_i^T. Offsets are normalized by their spread
// so the KKT system stays well conditioned at small radii.
Model build_model(const std::vector<VectorXd>& y, const std::vector<double>& f,
                  const MatrixXd& h_prev) {
  const int m = int(y.size());
  const int p = int(y[0].size());
  double s = 0.0;
  for (const auto& yi : y) s = std::max(s, yi.norm());
  if (s <= 0.0) return {};
  MatrixXd kkt = MatrixXd::Zero(m + p + 1, m + p + 1);
  VectorXd rhs = VectorXd::Zero(m + p + 1);
  std::vector<VectorXd> ys(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) ys[i] = y[i] / s;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double dot = ys[std::size_t(i)].dot(ys[std::size_t(j)]);
      kkt(i, j) = 0.5 * dot * dot;
    }
    kkt(i, m) = 1.0;
    kkt(m, i) = 1.0;
    kkt.block(i, m + 1, 1, p) = ys[std::size_t(i)].transpose();
    kkt.block(m + 1, i, p, 1) = ys[std::size_t(i)];
    rhs[i] = f[std::size_t(i)] -
             0.5 * y[std::size_t(i)].dot(h_prev * y[std::size_t(i)]);
  }
  Eigen::FullPivLU<MatrixXd> lu(kkt);
  Model model;
  if (!lu.isInvertible()) return model;
  const VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) return model;
  model.h = h_prev;
  for (int i = 0; i < m; ++i)
    model.h += (sol[i] / (s * s)) * ys[std::size_t(i)] *
               ys[std::size_t(i)].transpose();
  model.g = sol.segment(m + 1, p) / s;
  model.ok = true;
  return model;
}

} // namespace

OptimResult minimize_quadratic_tr(const Objective& fobj, const VectorXd& lo,
                                  const VectorXd& hi, const VectorXd& x0,
                                  const OptimOptions& opts) {
  const int p = int(x0.size());
  Scaler sc{lo, hi - lo};

  OptimResult res;
  int evals = 0;
  auto eval = [&](const VectorXd& u) {
    ++evals;
    const double v = fobj(sc.to_x(u.cwiseMax(0.0).cwiseMin(1.0)));
    return std::isfinite(v) ? v : kPenaltyValue;
  };

  VectorXd ub = ((x0 - lo).array() / sc.span.array()).matrix();
  ub = ub.cwiseMax(1e-9).cwiseMin(1.0 - 1e-9);

  std::vector<VectorXd> pts;
  std::vector<double> fv;

  auto seed_set = [&](const VectorXd& center, double radius) {
    radius = std::min(radius, 0.3);
    pts.clear();
    fv.clear();
    pts.push_back(center);
    fv.push_back(eval(center));
    for (int i = 0; i < p && evals < opts.max_evals; ++i) {
      double a = center[i] + radius, b = center[i] - radius;
      if (a > 1.0) a = center[i] - 0.5 * radius;
      if (b < 0.0) b = center[i] + 0.5 * radius;
      VectorXd up = center, dn = center;
      up[i] = std::clamp(a, 0.0, 1.0);
      dn[i] = std::clamp(b, 0.0, 1.0);
      pts.push_back(up);
      fv.push_back(eval(up));
      pts.push_back(dn);
      fv.push_back(eval(dn));
    }
  };

  double delta = opts.rho_begin;
  seed_set(ub, delta);
  auto best_idx = [&] {
    return int(std::min_element(fv.begin(), fv.end()) - fv.begin());
  };
  int ib = best_idx();
  double f_best = fv[std::size_t(ib)];
  VectorXd u_best = pts[std::size_t(ib)];

  auto refresh_if_spread = [&](double radius) {
    double spread = 0.0;
    for (const auto& pt : pts) spread = std::max(spread, (pt - u_best).norm());
    if (spread > 10.0 * radius && evals + 2 * p + 1 < opts.max_evals) {
      seed_set(u_best, radius);
      ib = best_idx();
      if (fv[std::size_t(ib)] < f_best) {
        f_best = fv[std::size_t(ib)];
        u_best = pts[std::size_t(ib)];
      }
    }
  };

  MatrixXd h_prev = MatrixXd::Zero(p, p);
  bool converged = false;

  // Resolution stages: work at radius floor rho until trust-region steps at
  // that scale stop helping, then test the relative gain of the whole stage
  // and shrink rho. Applying the relative-change rule to stages (not single
  // steps) lets the search walk out flat ridges before stopping.
  double rho = opts.rho_begin;
  double f_stage_start = f_best;
  int stage_count = 0;
  int stage_evals = 0;
  int floor_failures = 0; // ratio failures with the radius already at rho

  while (evals < opts.max_evals) {
    std::vector<VectorXd> y(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) y[i] = pts[i] - u_best;

    Model model = build_model(y, fv, h_prev);
    if (!model.ok) {
      h_prev.setZero();
      seed_set(u_best, std::max(delta, 4.0 * opts.rho_end));
      ib = best_idx();
      f_best = fv[std::size_t(ib)];
      u_best = pts[std::size_t(ib)];
      continue;
    }
    h_prev = model.h;

    VectorXd step = solve_subproblem(model.g, model.h, u_best, delta);
    const double pred = -quad_value(model.g, model.h, step);
    const bool stage_budget = stage_evals >= 50 * p;
    if (step.norm() < 0.5 * rho || pred <= 0.0 || floor_failures >= 3 ||
        stage_budget) {
      // stage exhausted at this resolution
      const double stage_gain = f_stage_start - f_best;
      const double small = opts.tol * std::max(std::abs(f_best), 1e-8);
      if (!stage_budget &&
          ((stage_count > 0 && stage_gain <= small) || rho <= opts.rho_end)) {
        converged = true;
        break;
      }
      rho = std::max(0.1 * rho, opts.rho_end);
      delta = std::max(0.5 * delta, rho);
      ++stage_count;
      stage_evals = 0;
      floor_failures = 0;
      f_stage_start = f_best;
      refresh_if_spread(delta);
      continue;
    }

    VectorXd u_new = (u_best + step).cwiseMax(0.0).cwiseMin(1.0);
    const double f_new = eval(u_new);
    ++stage_evals;
    const double ratio = (f_best - f_new) / pred;
    if (ratio < 0.01 && delta <= 1.01 * rho) ++floor_failures;
    else if (ratio >= 0.1) floor_failures = 0;

    // replace a near-duplicate of the new point when one exists, otherwise
    // the point farthest from the incumbent; keep the incumbent in the set
    int repl = -1;
    double near_d = std::numeric_limits<double>::infinity();
    double far_d = -1.0;
    int far = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const bool protect = (pts[i] - u_best).norm() == 0.0 && f_new > f_best;
      if (protect) continue;
      const double dn = (pts[i] - u_new).norm();
      if (dn < near_d) {
        near_d = dn;
        if (dn < 0.05 * delta) repl = int(i);
      }
      const double db = (pts[i] - u_best).norm();
      if (db > far_d) {
        far_d = db;
        far = int(i);
      }
    }
    if (repl < 0) repl = far;
    pts[std::size_t(repl)] = u_new;
    fv[std::size_t(repl)] = f_new;

    if (f_new < f_best) {
      u_best = u_new;
      f_best = f_new;
    }

    if (ratio >= 0.75 && step.norm() >= 0.8 * delta)
      delta = std::min(2.0 * delta, 0.5);
    else if (ratio < 0.1)
      delta = std::max(0.5 * delta, rho);

    refresh_if_spread(2.0 * delta);
  }

  res.x = sc.to_x(u_best);
  res.f = f_best;
  res.evals = evals;
  res.converged = converged;
  return res;
}

OptimResult minimize_nelder_mead(const Objective& fobj, const VectorXd& lo,
                                 const VectorXd& hi, const VectorXd& x0,
                                 const OptimOptions& opts) {
  const int p = int(x0.size());
  Scaler sc{lo, hi - lo};
  int evals = 0;
  auto eval = [&](const VectorXd& u) {
    ++evals;
    const double v = fobj(sc.to_x(u.cwiseMax(0.0).cwiseMin(1.0)));
    return std::isfinite(v) ? v : kPenaltyValue;
  };

  VectorXd u0 = ((x0 - lo).array() / sc.span.array()).matrix();
  std::vector<VectorXd> simplex(std::size_t(p) + 1, u0);
  std::vector<double> f(std::size_t(p) + 1);
  for (int i = 1; i <= p; ++i)
    simplex[std::size_t(i)][i - 1] =
        u0[i - 1] + (u0[i - 1] < 0.5 ? 0.15 : -0.15);
  for (std::size_t i = 0; i < simplex.size(); ++i) f[i] = eval(simplex[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(simplex.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return f[a] < f[b]; });
    std::vector<VectorXd> s2;
    std::vector<double> f2;
    for (auto i : idx) {
      s2.push_back(simplex[i]);
      f2.push_back(f[i]);
    }
    simplex.swap(s2);
    f.swap(f2);
  };

  bool converged = false;
  while (evals < opts.max_evals) {
    order();
    if (std::abs(f.back() - f.front()) <=
        opts.tol * std::max(std::abs(f.front()), 1e-8)) {
      converged = true;
      break;
    }
    VectorXd centroid = VectorXd::Zero(p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j <= p - 1; ++j) centroid[i] += simplex[std::size_t(j)][i];
    centroid /= double(p);

    const VectorXd xr = centroid + (centroid - simplex.back());
    const double fr = eval(xr);
    if (fr < f.front()) {
      const VectorXd xe = centroid + 2.0 * (centroid - simplex.back());
      const double fe = eval(xe);
      simplex.back() = fe < fr ? xe : xr;
      f.back() = std::min(fe, fr);
    } else if (fr < f[std::size_t(p) - 1]) {
      simplex.back() = xr;
      f.back() = fr;
    } else {
      const VectorXd xc = centroid + 0.5 * (simplex.back() - centroid);
      const double fc = eval(xc);
      if (fc < f.back()) {
        simplex.back() = xc;
        f.back() = fc;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i] = simplex.front() + 0.5 * (simplex[i] - simplex.front());
          f[i] = eval(simplex[i]);
        }
      }
    }
  }
  order();
  OptimResult res;
  res.x = sc.to_x(simplex.front().cwiseMax(0.0).cwiseMin(1.0));
  res.f = f.front();
  res.evals = evals;
  res.converged = converged;
  return res;
}

} // namespace maternpar
