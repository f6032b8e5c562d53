#pragma once

#include <Eigen/Dense>
#include <vector>

#include "afs/path.hpp"
#include "afs/standardize.hpp"

namespace afs {

/// Numerically stable logistic mean, exact for |z| up to the double range.
double sigmoid(double z);

/// log(1 + exp(z)) without overflow.
double log1pexp(double z);

/// Score residual y - sigmoid(x beta + intercept). Requires y in {0,1}^n
/// (throws NonBinaryResponse); the design's response must be left uncentered.
Eigen::VectorXd logistic_residual(const StandardizedDesign& design,
                                  const Eigen::VectorXd& beta,
                                  double intercept);

/// Binomial deviance -2 log L of (beta, intercept) on the design.
double logistic_deviance(const StandardizedDesign& design,
                         const Eigen::VectorXd& beta, double intercept);

struct LogisticFit {
  Eigen::VectorXd beta;  // slopes over `active`, in order
  double intercept = 0.0;
  bool separable = false;  // coefficient norm cap hit (no finite MLE)
  int iterations = 0;
};

/// IRLS (Newton with step halving) logistic MLE on the active columns with
/// an unpenalized intercept, warm-started. Converged when the largest score
/// component is <= 1e-8; diverging fits are capped at ||beta||_2 = 1e3 and
/// flagged separable. Throws IrlsSingular when the weighted Gram collapses.
LogisticFit logistic_fit_active(const StandardizedDesign& design,
                                const std::vector<int>& active,
                                const LogisticFit& warm);

/// l1 norm of a logistic lasso solution at lambda_min_ratio = 1e-3; the
/// default cap h for the logistic path.
double logistic_l1_bound(const StandardizedDesign& design,
                         int n_lambda = 50, double lambda_min_ratio = 1e-3);

struct LogisticStep {
  int m = 0;
  Eigen::VectorXd beta;  // length p
  double intercept = 0.0;
  int chosen = -1;
  bool entered = false;
  std::vector<int> active;
  double deviance = 0.0;
  double l1 = 0.0;  // slopes only; the intercept is exempt from the cap
};

struct LogisticAfsPath {
  std::vector<LogisticStep> steps;
  AfsConfig config;
  StopReason stop_reason = StopReason::kMaxSteps;
  double l1_cap_used = 0.0;
  int deviance_increases = 0;  // transient increases under rho < 1, logged
};

/// Logit-link AFS: score-residual selection, warm-started IRLS refit on the
/// active set, then the usual shrinkage blend of slopes and intercept.
/// rho = 1 reduces to classical forward stepwise logistic regression.
LogisticAfsPath afs_logistic_fit(const StandardizedDesign& design,
                                 const AfsConfig& config);

}  // namespace afs
