#pragma once

#include <Eigen/Dense>
#include <vector>

#include "afs/standardize.hpp"

namespace afs {

/// Lasso solutions along a decreasing lambda grid. The objective is
/// (1/2n) ||y - X beta||^2 + lambda ||beta||_1, so lambda_max =
/// max_j |x_j' y| / n; multiply lambda by 2n to translate to the
/// un-normalized ||y - X beta||^2 + lambda ||beta||_1 convention.
struct LassoPath {
  std::vector<double> lambdas;
  std::vector<Eigen::VectorXd> betas;

  const Eigen::VectorXd& back() const { return betas.back(); }
};

/// Cyclic coordinate descent with warm starts down a log-spaced grid from
/// lambda_max (where beta = 0) to lambda_max * lambda_min_ratio. Throws
/// NoConvergence if a grid point exceeds the sweep cap before the max
/// coefficient change drops below 1e-9.
LassoPath lasso_path(const StandardizedDesign& design, int n_lambda = 100,
                     double lambda_min_ratio = 1e-3);

/// Solve a single lambda starting from warm (model scale).
Eigen::VectorXd lasso_solve(const StandardizedDesign& design, double lambda,
                            Eigen::VectorXd warm);

/// Largest KKT violation of beta at lambda: stationarity residual for
/// active coordinates, threshold excess for inactive ones.
double lasso_kkt_violation(const StandardizedDesign& design,
                           const Eigen::VectorXd& beta, double lambda);

/// The early-stopping bound h = max_lambda ||beta(lambda)||_1, taken at
/// lambda_min_ratio = 1e-4; within solver tolerance of ||beta_ols||_1 when
/// n > p and the design is well conditioned.
double max_l1_norm(const StandardizedDesign& design);

}  // namespace afs
