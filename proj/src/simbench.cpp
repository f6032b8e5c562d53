#include "afs/simbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "afs/errors.hpp"
#include "afs/lasso.hpp"
#include "afs/rng.hpp"
#include "afs/standardize.hpp"

namespace afs {

Eigen::VectorXd spike_beta(int p, int s0, double value) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta.head(std::min(s0, p)).setConstant(value);
  return beta;
}

SimData gen_data(const SimConfig& config) {
  const int n = config.n;
  const int p = config.p;
  if (n < 2 || p < 1) throw InvalidConfig("need n >= 2 and p >= 1");
  if (config.beta.size() != p) {
    throw DimensionMismatch("beta length does not match p");
  }
  // positive definiteness of the equicorrelation matrix
  if (!(config.s_x >= 0.0) || !(config.sigma2_x > config.s_x) ||
      !(config.sigma2_x + (p - 1) * config.s_x > 0.0)) {
    throw InvalidCovariance("equicorrelated covariance is not positive definite");
  }
  const double beta_sigma_beta =
      (config.sigma2_x - config.s_x) * config.beta.squaredNorm() +
      config.s_x * std::pow(config.beta.sum(), 2);
  if (beta_sigma_beta <= 0.0) throw SnrUndefined();
  if (!(config.snr > 0.0)) throw InvalidConfig("snr must be positive");

  SimData data;
  data.sigma_eps = std::sqrt(beta_sigma_beta / config.snr);

  std::mt19937_64 rng(mix_seed(config.seed, 0x51d));
  const double a = std::sqrt(config.sigma2_x - config.s_x);
  const double b = std::sqrt(config.s_x);
  const Eigen::VectorXd z0 = normal_vector(rng, n);
  data.x.resize(n, p);
  for (int j = 0; j < p; ++j) {
    data.x.col(j) = a * normal_vector(rng, n) + b * z0;
  }
  data.mu = data.x * config.beta;
  data.y = data.mu + normal_vector(rng, n, data.sigma_eps);
  return data;
}

TrialMetrics evaluate(const Eigen::VectorXd& slopes, double intercept,
                      const Eigen::MatrixXd& x, const Eigen::VectorXd& mu,
                      const std::vector<int>& true_support) {
  const int p = static_cast<int>(slopes.size());
  TrialMetrics m;
  m.mse = (((x * slopes).array() + intercept).matrix() - mu).squaredNorm();

  std::vector<bool> truth(p, false);
  for (int j : true_support) truth[j] = true;
  const int s0 = static_cast<int>(true_support.size());
  int tp = 0, fp = 0;
  for (int j = 0; j < p; ++j) {
    if (slopes[j] != 0.0) {
      ++m.support;
      (truth[j] ? tp : fp)++;
    }
  }
  m.tpr = s0 > 0 ? static_cast<double>(tp) / s0 : 1.0;
  m.fpr = p > s0 ? static_cast<double>(fp) / (p - s0) : 0.0;
  return m;
}

double BenchmarkReport::median_metric(int cell, const std::string& method,
                                      const std::string& metric) const {
  std::vector<double> vals;
  for (const auto& row : rows) {
    if (row.cell != cell || row.method != method || row.failed) continue;
    if (metric == "mse") vals.push_back(row.metrics.mse);
    else if (metric == "support") vals.push_back(row.metrics.support);
    else if (metric == "fpr") vals.push_back(row.metrics.fpr);
    else if (metric == "tpr") vals.push_back(row.metrics.tpr);
    else if (metric == "wall_time") vals.push_back(row.metrics.wall_time_s);
    else throw InvalidConfig("unknown metric " + metric);
  }
  if (vals.empty()) throw Error("no trials for the requested cell/method");
  std::sort(vals.begin(), vals.end());
  const size_t h = vals.size() / 2;
  return vals.size() % 2 == 1 ? vals[h] : 0.5 * (vals[h - 1] + vals[h]);
}

namespace {

FitterKind kind_of(const std::string& method) {
  if (method == "afs") return FitterKind::kAfs;
  if (method == "fs") return FitterKind::kFs;
  if (method == "lasso") return FitterKind::kLasso;
  throw InvalidConfig("unknown method " + method);
}

// Wall time of one full-data path fit at the selected hyperparameters
// (CV excluded, mirroring the timing protocol).
double time_path_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     FitterKind kind, const CvEntry& sel, const CvGrid& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const StandardizedDesign design = standardize(x, y, true);
  if (kind == FitterKind::kLasso) {
    lasso_path(design, grid.n_lambda, grid.lambda_min_ratio);
  } else {
    AfsConfig config;
    config.rho = sel.rho;
    config.max_steps = grid.max_steps;
    afs_fit(design, config);
  }
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

BenchmarkReport run_benchmark(const std::vector<BenchmarkCell>& cells,
                              int trials, std::uint64_t seed,
                              const CvGrid& grid, int cv_k) {
  if (trials < 1) throw InvalidConfig("trials must be at least 1");
  BenchmarkReport report;
  report.cells = cells;
  report.trials = trials;
  report.seed = seed;

  for (size_t cell = 0; cell < cells.size(); ++cell) {
    const BenchmarkCell& spec = cells[cell];
    std::vector<int> true_support;
    for (int j = 0; j < spec.config.beta.size(); ++j) {
      if (spec.config.beta[j] != 0.0) true_support.push_back(j);
    }
    for (int trial = 0; trial < trials; ++trial) {
      SimConfig sim = spec.config;
      sim.seed = mix_seed(seed, cell, static_cast<std::uint64_t>(trial));
      const SimData data = gen_data(sim);
      for (const std::string& method : spec.methods) {
        BenchmarkRow row;
        row.cell = static_cast<int>(cell);
        row.trial = trial;
        row.method = method;
        try {
          const FitterKind kind = kind_of(method);
          const CvReport cv = kfold_cv(data.x, data.y, kind, grid, cv_k,
                                       mix_seed(seed, cell, trial));
          const CvEntry& sel = cv.best();
          const FittedModel model =
              fit_at(data.x, data.y, kind, sel, grid);
          row.metrics =
              evaluate(model.slopes, model.intercept, data.x, data.mu,
                       true_support);
          row.metrics.wall_time_s =
              time_path_fit(data.x, data.y, kind, sel, grid);
          row.metrics.method = method;
          row.selected_rho = sel.rho;
          row.selected_m = sel.m;
          row.selected_lambda = sel.lambda;
        } catch (const Error& e) {
          row.failed = true;
          row.failure = e.what();
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

}  // namespace afs
