#pragma once

// Independent reference implementations used as test oracles. These stay
// deliberately naive (dense factorizations, fresh fits per step, first-order
// solvers) and share no code with the library paths they check.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "afs/standardize.hpp"

namespace oracle {

inline Eigen::VectorXd dense_ols(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& y) {
  return x.colPivHouseholderQr().solve(y);
}

/// Textbook forward stepwise: argmax |x_j' r| against the residual of the
/// current OLS fit, refit from scratch via QR each step.
inline std::vector<Eigen::VectorXd> forward_stepwise(
    const afs::StandardizedDesign& design, int steps) {
  const int p = design.p();
  std::vector<int> active;
  std::vector<Eigen::VectorXd> path;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (int m = 0; m < steps; ++m) {
    const Eigen::VectorXd r = design.y - design.x * beta;
    int best = 0;
    double best_val = -1.0;
    for (int j = 0; j < p; ++j) {
      const double v = std::abs(design.x.col(j).dot(r));
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    bool is_new = true;
    for (int a : active) is_new = is_new && a != best;
    if (is_new) active.push_back(best);

    Eigen::MatrixXd xa(design.n(), active.size());
    for (size_t i = 0; i < active.size(); ++i) xa.col(i) = design.x.col(active[i]);
    const Eigen::VectorXd coef = dense_ols(xa, design.y);
    beta.setZero();
    for (size_t i = 0; i < active.size(); ++i) beta[active[i]] = coef[i];
    path.push_back(beta);
  }
  return path;
}

/// FISTA on (1/2n)||y - X b||^2 + lambda ||b||_1, run to a tight fixed
/// iteration budget; first-order method, independent of coordinate descent.
inline Eigen::VectorXd fista_lasso(const afs::StandardizedDesign& design,
                                   double lambda, int iters = 20000) {
  const int p = design.p();
  const double n = design.n();
  const double smax = design.x.jacobiSvd().singularValues()[0];
  const double step = n / (smax * smax);

  auto soft = [](double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
  };

  Eigen::VectorXd b = Eigen::VectorXd::Zero(p), z = b;
  double t_acc = 1.0;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd grad = design.x.transpose() * (design.x * z - design.y) / n;
    Eigen::VectorXd b_next(p);
    for (int j = 0; j < p; ++j) {
      b_next[j] = soft(z[j] - step * grad[j], step * lambda);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
    z = b_next + ((t_acc - 1.0) / t_next) * (b_next - b);
    b = b_next;
    t_acc = t_next;
  }
  return b;
}

inline double lasso_objective(const afs::StandardizedDesign& design,
                              const Eigen::VectorXd& b, double lambda) {
  return (design.y - design.x * b).squaredNorm() / (2.0 * design.n()) +
         lambda * b.lpNorm<1>();
}

/// Plain Newton logistic MLE on given columns plus intercept, from zero.
/// Returns (intercept, slopes).
inline std::pair<double, Eigen::VectorXd> newton_logistic(
    const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int iters = 200) {
  const int n = static_cast<int>(x.rows());
  const int k = static_cast<int>(x.cols());
  Eigen::MatrixXd xa(n, k + 1);
  xa.col(0).setOnes();
  xa.rightCols(k) = x;
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(k + 1);
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd eta = xa * coef;
    Eigen::VectorXd mu(n), w(n);
    for (int i = 0; i < n; ++i) {
      mu[i] = 1.0 / (1.0 + std::exp(-eta[i]));
      w[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-12);
    }
    const Eigen::VectorXd score = xa.transpose() * (y - mu);
    if (score.cwiseAbs().maxCoeff() < 1e-12) break;
    const Eigen::MatrixXd hess = xa.transpose() * w.asDiagonal() * xa;
    coef += hess.fullPivLu().solve(score);
    if (coef.norm() > 1e6) break;  // separable input; caller beware
  }
  return {coef[0], coef.tail(k)};
}

/// AFS closed form under an orthonormal design (entry step k_j known):
/// beta_j(m) = ols_j (1 - (1-rho)^(m - k_j + 1)).
inline double ortho_afs_coef(double ols_j, double rho, int m, int k_j) {
  if (k_j <= 0 || m < k_j) return 0.0;
  return ols_j * (1.0 - std::pow(1.0 - rho, m - k_j + 1));
}

}  // namespace oracle
