#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "afs/model_selection.hpp"

namespace afs {

/// Equicorrelated Gaussian design: Sigma_kk = sigma2_x, Sigma_jk = s_x, with
/// noise variance solved from the target snr = beta' Sigma beta / sigma_eps^2.
struct SimConfig {
  int n = 100;
  int p = 100;
  double s_x = 0.0;      // common off-diagonal covariance
  double sigma2_x = 1.0; // common variance
  Eigen::VectorXd beta;  // length p
  double snr = 1.0;
  std::uint64_t seed = 0;
};

struct SimData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd mu;  // x * beta
  double sigma_eps = 0.0;
};

/// Sample the design via the rank-one decomposition
/// X = sqrt(sigma2_x - s_x) Z + sqrt(s_x) z0 1', which is O(np). Throws
/// InvalidCovariance when the equicorrelation matrix is not positive
/// definite and SnrUndefined when beta' Sigma beta = 0.
SimData gen_data(const SimConfig& config);

/// Convenience: beta with the first s0 entries set to `value`.
Eigen::VectorXd spike_beta(int p, int s0, double value = 2.0);

struct TrialMetrics {
  double mse = 0.0;   // ||X beta_hat - mu||^2 (fit evaluated on the design)
  int support = 0;    // nonzero coefficients
  double fpr = 0.0;
  double tpr = 0.0;
  double wall_time_s = 0.0;
  std::string method;
};

/// Metrics of a fitted model (original-scale slopes + intercept) against the
/// true mean and support.
TrialMetrics evaluate(const Eigen::VectorXd& slopes, double intercept,
                      const Eigen::MatrixXd& x, const Eigen::VectorXd& mu,
                      const std::vector<int>& true_support);

struct BenchmarkCell {
  SimConfig config;                  // seed field is ignored; derived per trial
  std::vector<std::string> methods;  // subset of {"afs", "fs", "lasso"}
};

struct BenchmarkRow {
  int cell = 0;
  int trial = 0;
  std::string method;
  TrialMetrics metrics;
  double selected_rho = 0.0;
  int selected_m = 0;
  double selected_lambda = 0.0;
  bool failed = false;
  std::string failure;
};

struct BenchmarkReport {
  std::vector<BenchmarkCell> cells;
  std::vector<BenchmarkRow> rows;
  int trials = 0;
  std::uint64_t seed = 0;

  /// Median of a metric over the non-failed trials of (cell, method).
  double median_metric(int cell, const std::string& method,
                       const std::string& metric) const;
};

/// CV-select, refit, and score every method on `trials` draws per cell.
/// Hyperparameter selection runs k-fold CV (k = 10); the recorded wall time
/// covers only the full-data path fit at the selected hyperparameters.
/// Per-trial fitter failures are recorded, not fatal. Deterministic given
/// the seed.
BenchmarkReport run_benchmark(const std::vector<BenchmarkCell>& cells,
                              int trials, std::uint64_t seed,
                              const CvGrid& grid = CvGrid{}, int cv_k = 10);

}  // namespace afs
