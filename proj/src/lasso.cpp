#include "afs/lasso.hpp"

#include <cmath>

#include "afs/errors.hpp"

namespace afs {

namespace {

constexpr double kTol = 1e-9;
constexpr int kMaxSweeps = 100000;

double soft(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

}  // namespace

Eigen::VectorXd lasso_solve(const StandardizedDesign& design, double lambda,
                            Eigen::VectorXd beta) {
  const int p = design.p();
  const double n = static_cast<double>(design.n());
  Eigen::VectorXd r = design.y - design.x * beta;
  Eigen::VectorXd diag(p);
  for (int j = 0; j < p; ++j) diag[j] = design.x.col(j).squaredNorm() / n;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_change = 0.0;
    for (int j = 0; j < p; ++j) {
      const double old = beta[j];
      const double z = design.x.col(j).dot(r) / n + diag[j] * old;
      const double next = soft(z, lambda) / diag[j];
      if (next != old) {
        r += design.x.col(j) * (old - next);
        beta[j] = next;
        max_change = std::max(max_change, std::abs(next - old));
      }
    }
    if (max_change <= kTol) return beta;
  }
  throw NoConvergence(lambda, kMaxSweeps);
}

LassoPath lasso_path(const StandardizedDesign& design, int n_lambda,
                     double lambda_min_ratio) {
  if (n_lambda < 2) throw InvalidConfig("n_lambda must be at least 2");
  if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0)) {
    throw InvalidConfig("lambda_min_ratio must lie in (0, 1)");
  }
  const int p = design.p();
  const double n = static_cast<double>(design.n());
  const double lambda_max =
      (design.x.transpose() * design.y).cwiseAbs().maxCoeff() / n;

  LassoPath path;
  if (lambda_max <= 0.0) {
    // y is orthogonal to every column; beta = 0 solves every lambda.
    path.lambdas.push_back(0.0);
    path.betas.push_back(Eigen::VectorXd::Zero(p));
    return path;
  }

  const double log_max = std::log(lambda_max);
  const double log_min = std::log(lambda_max * lambda_min_ratio);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (int i = 0; i < n_lambda; ++i) {
    const double t = static_cast<double>(i) / (n_lambda - 1);
    const double lambda = std::exp(log_max + t * (log_min - log_max));
    beta = lasso_solve(design, lambda, std::move(beta));
    path.lambdas.push_back(lambda);
    path.betas.push_back(beta);
  }
  return path;
}

double lasso_kkt_violation(const StandardizedDesign& design,
                           const Eigen::VectorXd& beta, double lambda) {
  const double n = static_cast<double>(design.n());
  const Eigen::VectorXd g =
      design.x.transpose() * (design.y - design.x * beta) / n;
  double worst = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    if (beta[j] != 0.0) {
      worst = std::max(worst, std::abs(g[j] - lambda * (beta[j] > 0 ? 1.0 : -1.0)));
    } else {
      worst = std::max(worst, std::abs(g[j]) - lambda);
    }
  }
  return worst;
}

double max_l1_norm(const StandardizedDesign& design) {
  const LassoPath path = lasso_path(design, 100, 1e-4);
  return path.betas.back().lpNorm<1>();
}

}  // namespace afs
