#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "afs/path.hpp"

namespace afs {

enum class FitterKind { kAfs, kFs, kLasso, kLogisticAfs };

std::string to_string(FitterKind f);

/// Hyperparameter grid for cross-validation. AFS/FS grids are
/// rho x {0..max_steps} (m = 0 is the null model); the lasso grid is a
/// log-spaced lambda ladder indexed per fold so that no quantity derived
/// from held-out rows leaks into training.
struct CvGrid {
  std::vector<double> rho_grid = {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
  int max_steps = 100;
  int n_lambda = 100;
  double lambda_min_ratio = 1e-3;
};

struct CvEntry {
  double rho = 1.0;       // AFS/FS
  int m = 0;              // AFS/FS step count
  int lambda_index = -1;  // lasso grid position
  double lambda = 0.0;    // lasso lambda on the full-data grid
  double cv_mean = 0.0;
  double cv_se = 0.0;
};

struct CvReport {
  FitterKind fitter = FitterKind::kAfs;
  std::vector<CvEntry> entries;
  int selected = -1;
  int k = 0;
  std::uint64_t seed = 0;

  const CvEntry& best() const { return entries.at(selected); }
};

/// Fold id (0..k-1) per row: contiguous blocks of a seeded permutation.
std::vector<int> kfold_assignment(int n, int k, std::uint64_t seed);

/// K-fold cross-validation over the fitter's grid. Standardization, l1
/// caps, and lambda ladders are recomputed from each training portion only.
/// The selected entry attains the minimum cv_mean, ties broken toward the
/// sparser model (smaller m, then smaller rho; larger lambda).
CvReport kfold_cv(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& y_raw,
                  FitterKind fitter, const CvGrid& grid, int k,
                  std::uint64_t seed, bool unit_norm = true);

/// Fitted coefficients (original scale) and intercept at one grid point,
/// refit on the full data.
struct FittedModel {
  Eigen::VectorXd slopes;
  double intercept = 0.0;
  double rho = 1.0;
  int m = 0;
  double lambda = 0.0;
};

FittedModel fit_at(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& y_raw,
                   FitterKind fitter, const CvEntry& entry,
                   const CvGrid& grid, bool unit_norm = true);

struct DofEstimate {
  double rho = 0.0;
  int steps = 0;
  double dof = 0.0;
  double mc_se = 0.0;  // Monte-Carlo standard error of dof
  int b = 0;
  double sigma = 0.0;
};

/// Bootstrap degrees of freedom sum_i Cov(y_i, yhat_i) / sigma^2 for an
/// arbitrary fitted-value map y -> yhat on a fixed design; draws are
/// y_b = mu + N(0, sigma^2 I).
DofEstimate bootstrap_dof(
    const Eigen::VectorXd& mu, double sigma,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fit_predict,
    int b, std::uint64_t seed);

/// AFS-specific wrapper: fits rho / steps on (x, y_b) and records them in
/// the estimate.
DofEstimate bootstrap_dof_afs(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& mu, double sigma,
                              double rho, int steps, int b,
                              std::uint64_t seed);

}  // namespace afs
