#include "afs/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "afs/errors.hpp"

namespace afs {

namespace {

constexpr double kScoreTol = 1e-8;
constexpr double kBetaNormCap = 1e3;
constexpr int kMaxIrlsIter = 100;

void check_binary(const Eigen::VectorXd& y) {
  for (int i = 0; i < y.size(); ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw NonBinaryResponse("response entry " + std::to_string(i) +
                              " is not 0/1");
    }
  }
}

Eigen::VectorXd linear_predictor(const StandardizedDesign& design,
                                 const Eigen::VectorXd& beta,
                                 double intercept) {
  return (design.x * beta).array() + intercept;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log1pexp(double z) {
  if (z > 35.0) return z;
  if (z < -35.0) return std::exp(z);
  return std::log1p(std::exp(z));
}

Eigen::VectorXd logistic_residual(const StandardizedDesign& design,
                                  const Eigen::VectorXd& beta,
                                  double intercept) {
  check_binary(design.y);
  const Eigen::VectorXd eta = linear_predictor(design, beta, intercept);
  Eigen::VectorXd r(eta.size());
  for (int i = 0; i < eta.size(); ++i) r[i] = design.y[i] - sigmoid(eta[i]);
  return r;
}

double logistic_deviance(const StandardizedDesign& design,
                         const Eigen::VectorXd& beta, double intercept) {
  const Eigen::VectorXd eta = linear_predictor(design, beta, intercept);
  double loglik = 0.0;
  for (int i = 0; i < eta.size(); ++i) {
    loglik += design.y[i] * eta[i] - log1pexp(eta[i]);
  }
  return -2.0 * loglik;
}

LogisticFit logistic_fit_active(const StandardizedDesign& design,
                                const std::vector<int>& active,
                                const LogisticFit& warm) {
  check_binary(design.y);
  const int n = design.n();
  const int k = static_cast<int>(active.size());

  Eigen::MatrixXd xa(n, k + 1);
  xa.col(0).setOnes();
  for (int i = 0; i < k; ++i) xa.col(i + 1) = design.x.col(active[i]);

  Eigen::VectorXd coef = Eigen::VectorXd::Zero(k + 1);
  coef[0] = warm.intercept;
  const int warm_k = static_cast<int>(warm.beta.size());
  coef.segment(1, std::min(k, warm_k)) = warm.beta.head(std::min(k, warm_k));

  LogisticFit fit;
  Eigen::VectorXd eta = xa * coef;
  double loglik = (design.y.array() * eta.array()).sum();
  for (int i = 0; i < n; ++i) loglik -= log1pexp(eta[i]);

  for (int iter = 0; iter < kMaxIrlsIter; ++iter) {
    Eigen::VectorXd mu(n), w(n);
    for (int i = 0; i < n; ++i) {
      mu[i] = sigmoid(eta[i]);
      w[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-10);
    }
    const Eigen::VectorXd score = xa.transpose() * (design.y - mu);
    fit.iterations = iter;
    if (score.cwiseAbs().maxCoeff() <= kScoreTol) break;

    const Eigen::MatrixXd hess =
        xa.transpose() * w.asDiagonal() * xa;  // (k+1) x (k+1)
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw IrlsSingular("weighted gram is numerically singular");
    }
    Eigen::VectorXd delta = ldlt.solve(score);
    if (!delta.allFinite()) {
      throw IrlsSingular("newton step is not finite");
    }

    // Step halving: accept the first step that does not decrease loglik.
    double step = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      const Eigen::VectorXd cand = coef + step * delta;
      const Eigen::VectorXd eta_c = xa * cand;
      double ll = (design.y.array() * eta_c.array()).sum();
      for (int i = 0; i < n; ++i) ll -= log1pexp(eta_c[i]);
      if (ll >= loglik - 1e-12) {
        coef = cand;
        eta = eta_c;
        loglik = ll;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    if (coef.tail(k).norm() > kBetaNormCap) {
      fit.separable = true;  // data property: the MLE runs off to infinity
      break;
    }
  }

  fit.intercept = coef[0];
  fit.beta = coef.tail(k);
  return fit;
}

double logistic_l1_bound(const StandardizedDesign& design, int n_lambda,
                         double lambda_min_ratio) {
  check_binary(design.y);
  const int n = design.n();
  const int p = design.p();
  const double ybar = design.y.mean();
  const double lambda_max =
      (design.x.transpose() * (design.y.array() - ybar).matrix())
          .cwiseAbs()
          .maxCoeff() /
      n;
  if (lambda_max <= 0.0) return 0.0;

  Eigen::VectorXd diag(p);
  for (int j = 0; j < p; ++j) diag[j] = design.x.col(j).squaredNorm() / n;

  auto soft = [](double z, double lam) {
    if (z > lam) return z - lam;
    if (z < -lam) return z + lam;
    return 0.0;
  };

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double intercept = std::log(std::max(ybar, 1e-12) / std::max(1.0 - ybar, 1e-12));
  const double log_max = std::log(lambda_max);
  const double log_min = std::log(lambda_max * lambda_min_ratio);

  for (int g = 0; g < n_lambda; ++g) {
    const double t = static_cast<double>(g) / (n_lambda - 1);
    const double lambda = std::exp(log_max + t * (log_min - log_max));
    // Outer quadratic approximations, inner penalized WLS coordinate sweeps.
    for (int outer = 0; outer < 50; ++outer) {
      Eigen::VectorXd eta = (design.x * beta).array() + intercept;
      Eigen::VectorXd w(n), z(n);
      for (int i = 0; i < n; ++i) {
        const double mu = sigmoid(eta[i]);
        w[i] = std::max(mu * (1.0 - mu), 1e-5);
        z[i] = eta[i] + (design.y[i] - mu) / w[i];
      }
      Eigen::VectorXd wjs(p);
      for (int j = 0; j < p; ++j) {
        wjs[j] = (w.array() * design.x.col(j).array().square()).sum() / n;
      }
      double change_outer = 0.0;
      for (int inner = 0; inner < 200; ++inner) {
        double max_change = 0.0;
        Eigen::VectorXd r = z - design.x * beta;
        r.array() -= intercept;
        const double i_new = intercept + (w.array() * r.array()).sum() / w.sum();
        r.array() -= i_new - intercept;
        max_change = std::max(max_change, std::abs(i_new - intercept));
        intercept = i_new;
        for (int j = 0; j < p; ++j) {
          const double wj = wjs[j];
          const double zj =
              (w.array() * design.x.col(j).array() * r.array()).sum() / n +
              wj * beta[j];
          const double next = soft(zj, lambda) / wj;
          if (next != beta[j]) {
            r -= design.x.col(j) * (next - beta[j]);
            max_change = std::max(max_change, std::abs(next - beta[j]));
            beta[j] = next;
          }
        }
        change_outer = max_change;
        if (max_change <= 1e-7) break;
      }
      if (change_outer <= 1e-7) break;
    }
  }
  return beta.lpNorm<1>();
}

LogisticAfsPath afs_logistic_fit(const StandardizedDesign& design,
                                 const AfsConfig& config) {
  config.validate();
  check_binary(design.y);
  const int p = design.p();
  const double h = config.l1_cap ? *config.l1_cap : logistic_l1_bound(design);

  LogisticAfsPath path;
  path.config = config;
  path.l1_cap_used = h;
  path.stop_reason = StopReason::kMaxSteps;

  const double ybar = design.y.mean();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double intercept =
      std::log(std::max(ybar, 1e-12) / std::max(1.0 - ybar, 1e-12));
  const double null_deviance = logistic_deviance(design, beta, intercept);

  std::vector<int> active;
  LogisticFit warm;
  warm.beta = Eigen::VectorXd::Zero(0);
  warm.intercept = intercept;
  double prev_deviance = null_deviance;

  for (int m = 1; m <= config.max_steps; ++m) {
    const Eigen::VectorXd r = logistic_residual(design, beta, intercept);
    const Eigen::VectorXd c = design.x.transpose() * r;
    int j = 0;
    double best = std::abs(c[0]);
    for (int i = 1; i < p; ++i) {
      if (std::abs(c[i]) > best) {
        best = std::abs(c[i]);
        j = i;
      }
    }
    const bool entered =
        std::find(active.begin(), active.end(), j) == active.end();
    if (entered) {
      active.push_back(j);
      Eigen::VectorXd padded(warm.beta.size() + 1);
      padded << warm.beta, 0.0;
      warm.beta = padded;
    }

    LogisticFit fit;
    try {
      fit = logistic_fit_active(design, active, warm);
    } catch (const IrlsSingular&) {
      path.stop_reason = StopReason::kSingularGram;
      break;
    }
    warm = fit;

    Eigen::VectorXd nu = Eigen::VectorXd::Zero(p);
    for (size_t i = 0; i < active.size(); ++i) nu[active[i]] = fit.beta[i];
    beta = (1.0 - config.rho) * beta + config.rho * nu;
    intercept = (1.0 - config.rho) * intercept + config.rho * fit.intercept;

    LogisticStep step;
    step.m = m;
    step.beta = beta;
    step.intercept = intercept;
    step.chosen = j;
    step.entered = entered;
    step.active = active;
    step.deviance = logistic_deviance(design, beta, intercept);
    step.l1 = beta.lpNorm<1>();
    if (step.deviance > prev_deviance + 1e-6) ++path.deviance_increases;
    prev_deviance = step.deviance;
    path.steps.push_back(std::move(step));

    if (fit.separable) {
      path.stop_reason = StopReason::kSeparable;
      break;
    }
    if (path.steps.back().l1 >= h) {
      path.stop_reason = StopReason::kL1CapReached;
      break;
    }
    if (path.steps.back().deviance < 1e-12 * std::max(null_deviance, 1.0)) {
      path.stop_reason = StopReason::kExactFit;
      break;
    }
  }
  return path;
}

}  // namespace afs
