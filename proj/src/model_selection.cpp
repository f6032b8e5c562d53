#include "afs/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "afs/errors.hpp"
#include "afs/lasso.hpp"
#include "afs/logistic.hpp"
#include "afs/rng.hpp"
#include "afs/standardize.hpp"

namespace afs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x,
                          const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<int>(rows.size()), x.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(i) = x.row(rows[i]);
  return out;
}

Eigen::VectorXd take_rows(const Eigen::VectorXd& v,
                          const std::vector<int>& rows) {
  Eigen::VectorXd out(static_cast<int>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) out[i] = v[rows[i]];
  return out;
}

double mean_squared_error(const Eigen::VectorXd& pred,
                          const Eigen::VectorXd& truth) {
  return (pred - truth).squaredNorm() / truth.size();
}

// Mean binomial deviance of linear predictors eta against y.
double mean_deviance(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
  double d = 0.0;
  for (int i = 0; i < eta.size(); ++i) {
    d += -2.0 * (y[i] * eta[i] - log1pexp(eta[i]));
  }
  return d / eta.size();
}

// Prefer lower loss; on exact ties prefer the sparser model.
bool better(const CvEntry& a, const CvEntry& b, FitterKind fitter) {
  if (a.cv_mean != b.cv_mean) return a.cv_mean < b.cv_mean;
  if (fitter == FitterKind::kLasso) return a.lambda_index < b.lambda_index;
  if (a.m != b.m) return a.m < b.m;
  return a.rho < b.rho;
}

}  // namespace

std::string to_string(FitterKind f) {
  switch (f) {
    case FitterKind::kAfs: return "afs";
    case FitterKind::kFs: return "fs";
    case FitterKind::kLasso: return "lasso";
    case FitterKind::kLogisticAfs: return "logistic-afs";
  }
  return "unknown";
}

std::vector<int> kfold_assignment(int n, int k, std::uint64_t seed) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(mix_seed(seed, 0xf01d));
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<int> fold(n, 0);
  const int base = n / k;
  const int rem = n % k;
  int pos = 0;
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < rem ? 1 : 0);
    for (int i = 0; i < size; ++i) fold[perm[pos++]] = f;
  }
  return fold;
}

CvReport kfold_cv(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& y_raw,
                  FitterKind fitter, const CvGrid& grid, int k,
                  std::uint64_t seed, bool unit_norm) {
  const int n = static_cast<int>(x_raw.rows());
  if (y_raw.size() != n) throw DimensionMismatch("x/y row mismatch");
  if (k < 2) throw InvalidConfig("k must be at least 2");
  if (k > n) throw FoldTooSmall("more folds than rows");

  CvReport report;
  report.fitter = fitter;
  report.k = k;
  report.seed = seed;

  const bool logistic = fitter == FitterKind::kLogisticAfs;
  const std::vector<double> rhos =
      fitter == FitterKind::kFs ? std::vector<double>{1.0} : grid.rho_grid;

  // Grid entries in tie-break order: sparser models first.
  if (fitter == FitterKind::kLasso) {
    const StandardizedDesign full = standardize(x_raw, y_raw, unit_norm);
    const double lambda_max =
        (full.x.transpose() * full.y).cwiseAbs().maxCoeff() / n;
    for (int i = 0; i < grid.n_lambda; ++i) {
      CvEntry e;
      e.lambda_index = i;
      const double t = static_cast<double>(i) / (grid.n_lambda - 1);
      e.lambda = lambda_max * std::pow(grid.lambda_min_ratio, t);
      report.entries.push_back(e);
    }
  } else {
    for (int m = 0; m <= grid.max_steps; ++m) {
      for (double rho : rhos) {
        CvEntry e;
        e.rho = rho;
        e.m = m;
        report.entries.push_back(e);
        if (m == 0) break;  // the null model does not depend on rho
      }
    }
  }

  const std::vector<int> fold_of = kfold_assignment(n, k, seed);
  Eigen::MatrixXd losses(static_cast<int>(report.entries.size()), k);

  for (int f = 0; f < k; ++f) {
    std::vector<int> train_idx, test_idx;
    for (int i = 0; i < n; ++i) {
      (fold_of[i] == f ? test_idx : train_idx).push_back(i);
    }
    if (static_cast<int>(train_idx.size()) < 2) {
      throw FoldTooSmall("training portion of fold " + std::to_string(f) +
                         " has fewer than 2 rows");
    }
    const Eigen::MatrixXd x_tr = take_rows(x_raw, train_idx);
    const Eigen::VectorXd y_tr = take_rows(y_raw, train_idx);
    const Eigen::MatrixXd x_te = take_rows(x_raw, test_idx);
    const Eigen::VectorXd y_te = take_rows(y_raw, test_idx);

    const StandardizedDesign design =
        standardize(x_tr, y_tr, unit_norm, /*center_y=*/!logistic);

    if (fitter == FitterKind::kLasso) {
      const double lambda_max =
          (design.x.transpose() * design.y).cwiseAbs().maxCoeff() /
          design.n();
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(design.p());
      for (size_t e = 0; e < report.entries.size(); ++e) {
        const double t =
            static_cast<double>(report.entries[e].lambda_index) /
            (grid.n_lambda - 1);
        const double lambda = lambda_max * std::pow(grid.lambda_min_ratio, t);
        if (lambda_max > 0.0) {
          beta = lasso_solve(design, lambda, std::move(beta));
        }
        losses(static_cast<int>(e), f) =
            mean_squared_error(design.predict(x_te, beta), y_te);
      }
    } else if (logistic) {
      const double h = logistic_l1_bound(design);
      const double ybar = design.y.mean();
      const double null_int =
          std::log(std::max(ybar, 1e-12) / std::max(1.0 - ybar, 1e-12));
      for (size_t e = 0; e < report.entries.size(); ++e) {
        const auto& entry = report.entries[e];
        if (entry.m == 0) {
          Eigen::VectorXd eta0 = Eigen::VectorXd::Constant(
              static_cast<int>(test_idx.size()), null_int);
          losses(static_cast<int>(e), f) = mean_deviance(eta0, y_te);
        } else {
          losses(static_cast<int>(e), f) = kInf;  // filled below
        }
      }
      for (double rho : rhos) {
        AfsConfig config;
        config.rho = rho;
        config.max_steps = grid.max_steps;
        config.l1_cap = h;
        const LogisticAfsPath p = afs_logistic_fit(design, config);
        for (size_t e = 0; e < report.entries.size(); ++e) {
          auto& entry = report.entries[e];
          if (entry.m == 0 || entry.rho != rho) continue;
          const int idx =
              std::min<int>(entry.m, static_cast<int>(p.steps.size())) - 1;
          Eigen::VectorXd eta;
          if (idx < 0) {
            eta = Eigen::VectorXd::Constant(
                static_cast<int>(test_idx.size()), null_int);
          } else {
            const auto& s = p.steps[idx];
            const Eigen::VectorXd slopes = design.original_slopes(s.beta);
            eta = (x_te * slopes).array() +
                  (s.intercept - slopes.dot(design.col_means));
          }
          losses(static_cast<int>(e), f) = mean_deviance(eta, y_te);
        }
      }
    } else {
      const double h = max_l1_norm(design);
      for (size_t e = 0; e < report.entries.size(); ++e) {
        if (report.entries[e].m == 0) {
          Eigen::VectorXd pred = Eigen::VectorXd::Constant(
              static_cast<int>(test_idx.size()), design.y_mean);
          losses(static_cast<int>(e), f) = mean_squared_error(pred, y_te);
        }
      }
      for (double rho : rhos) {
        AfsConfig config;
        config.rho = rho;
        config.max_steps = grid.max_steps;
        config.l1_cap = h;
        const AfsPath p = afs_fit(design, config);
        for (size_t e = 0; e < report.entries.size(); ++e) {
          auto& entry = report.entries[e];
          if (entry.m == 0 || entry.rho != rho) continue;
          const int idx =
              std::min<int>(entry.m, static_cast<int>(p.steps.size())) - 1;
          Eigen::VectorXd pred;
          if (idx < 0) {
            pred = Eigen::VectorXd::Constant(
                static_cast<int>(test_idx.size()), design.y_mean);
          } else {
            pred = design.predict(x_te, p.steps[idx].beta);
          }
          losses(static_cast<int>(e), f) = mean_squared_error(pred, y_te);
        }
      }
    }
  }

  for (size_t e = 0; e < report.entries.size(); ++e) {
    const Eigen::VectorXd row = losses.row(static_cast<int>(e));
    const double mean = row.mean();
    report.entries[e].cv_mean = mean;
    report.entries[e].cv_se =
        k > 1 ? std::sqrt((row.array() - mean).square().sum() / (k - 1)) /
                    std::sqrt(static_cast<double>(k))
              : 0.0;
  }

  report.selected = 0;
  for (size_t e = 1; e < report.entries.size(); ++e) {
    if (better(report.entries[e], report.entries[report.selected], fitter)) {
      report.selected = static_cast<int>(e);
    }
  }
  return report;
}

FittedModel fit_at(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& y_raw,
                   FitterKind fitter, const CvEntry& entry, const CvGrid& grid,
                   bool unit_norm) {
  const bool logistic = fitter == FitterKind::kLogisticAfs;
  const StandardizedDesign design =
      standardize(x_raw, y_raw, unit_norm, /*center_y=*/!logistic);
  const int p = design.p();

  FittedModel model;
  model.rho = entry.rho;
  model.m = entry.m;
  model.lambda = entry.lambda;

  if (fitter == FitterKind::kLasso) {
    const double lambda_max =
        (design.x.transpose() * design.y).cwiseAbs().maxCoeff() / design.n();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    for (int i = 0; i <= entry.lambda_index && lambda_max > 0.0; ++i) {
      const double t = static_cast<double>(i) / (grid.n_lambda - 1);
      const double lambda = lambda_max * std::pow(grid.lambda_min_ratio, t);
      beta = lasso_solve(design, lambda, std::move(beta));
      model.lambda = lambda;
    }
    model.slopes = design.original_slopes(beta);
    model.intercept = design.original_intercept(beta);
    return model;
  }

  if (entry.m == 0) {
    model.slopes = Eigen::VectorXd::Zero(p);
    if (logistic) {
      const double ybar = design.y.mean();
      model.intercept =
          std::log(std::max(ybar, 1e-12) / std::max(1.0 - ybar, 1e-12));
    } else {
      model.intercept = design.y_mean;
    }
    return model;
  }

  AfsConfig config;
  config.rho = entry.rho;
  config.max_steps = entry.m;
  if (logistic) {
    const LogisticAfsPath path = afs_logistic_fit(design, config);
    if (path.steps.empty()) {
      model.slopes = Eigen::VectorXd::Zero(p);
      const double ybar = design.y.mean();
      model.intercept =
          std::log(std::max(ybar, 1e-12) / std::max(1.0 - ybar, 1e-12));
    } else {
      const auto& s = path.steps.back();
      model.slopes = design.original_slopes(s.beta);
      model.intercept = s.intercept - model.slopes.dot(design.col_means);
    }
  } else {
    const AfsPath path = afs_fit(design, config);
    if (path.steps.empty()) {
      model.slopes = Eigen::VectorXd::Zero(p);
      model.intercept = design.y_mean;
    } else {
      const auto& s = path.steps.back();
      model.slopes = design.original_slopes(s.beta);
      model.intercept = design.original_intercept(s.beta);
    }
  }
  return model;
}

DofEstimate bootstrap_dof(
    const Eigen::VectorXd& mu, double sigma,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fit_predict,
    int b, std::uint64_t seed) {
  if (b < 100) throw InvalidConfig("need at least 100 bootstrap draws");
  if (!(sigma > 0.0)) throw InvalidConfig("sigma must be positive");
  const int n = static_cast<int>(mu.size());

  Eigen::MatrixXd ys(n, b), fits(n, b);
  for (int t = 0; t < b; ++t) {
    std::mt19937_64 rng(mix_seed(seed, 0xd0f, static_cast<std::uint64_t>(t)));
    ys.col(t) = mu + normal_vector(rng, n, sigma);
    fits.col(t) = fit_predict(ys.col(t));
  }

  const Eigen::VectorXd y_bar = ys.rowwise().mean();
  const Eigen::VectorXd f_bar = fits.rowwise().mean();
  Eigen::VectorXd w(b);  // per-draw contribution to the covariance sum
  for (int t = 0; t < b; ++t) {
    w[t] = (ys.col(t) - y_bar).dot(fits.col(t) - f_bar) / (sigma * sigma);
  }
  const double scale = static_cast<double>(b) / (b - 1);

  DofEstimate est;
  est.b = b;
  est.sigma = sigma;
  est.dof = w.sum() / (b - 1);
  const Eigen::VectorXd t_stat = w * scale;
  const double t_mean = t_stat.mean();
  est.mc_se = std::sqrt((t_stat.array() - t_mean).square().sum() / (b - 1)) /
              std::sqrt(static_cast<double>(b));
  return est;
}

DofEstimate bootstrap_dof_afs(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& mu, double sigma,
                              double rho, int steps, int b,
                              std::uint64_t seed) {
  auto fit_predict = [&](const Eigen::VectorXd& y) {
    const StandardizedDesign design = standardize(x, y, true);
    AfsConfig config;
    config.rho = rho;
    config.max_steps = steps;
    config.l1_cap = kInf;
    const AfsPath path = afs_fit(design, config);
    if (path.steps.empty()) {
      return Eigen::VectorXd::Constant(x.rows(), design.y_mean).eval();
    }
    return design.predict(x, path.steps.back().beta);
  };
  DofEstimate est = bootstrap_dof(mu, sigma, fit_predict, b, seed);
  est.rho = rho;
  est.steps = steps;
  return est;
}

}  // namespace afs
