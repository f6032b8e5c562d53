#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "afs/gram.hpp"
#include "afs/standardize.hpp"

namespace afs {

enum class TieBreak { kLowestIndex };

enum class StopReason {
  kMaxSteps,
  kL1CapReached,
  kSingularGram,
  kExactFit,
  kSeparable,
};

std::string to_string(StopReason r);

struct AfsConfig {
  double rho = 0.1;                 // shrinkage/step size in (0, 1]
  int max_steps = 100;              // M
  std::optional<double> l1_cap;     // h; nullopt resolves to the lasso bound
  TieBreak tie_break = TieBreak::kLowestIndex;

  void validate() const;  // throws InvalidConfig
};

struct AfsStep {
  int m = 0;                // 1-based step index
  Eigen::VectorXd beta;     // model-scale coefficients, length p
  int chosen = -1;          // variable selected at this step
  bool entered = false;     // true when chosen was new to the active set
  int dropped = -1;         // variable removed at this step (lasso mode)
  bool at_knot = false;     // recovery fit landed on an active-set boundary
  std::vector<int> active;  // active set after this step, in entry order
  double rss = 0.0;         // ||y - X beta||^2
  double l1 = 0.0;          // ||beta||_1
};

struct AfsPath {
  std::vector<AfsStep> steps;
  AfsConfig config;
  StopReason stop_reason = StopReason::kMaxSteps;
  double l1_cap_used = 0.0;  // resolved h (inf when uncapped)

  const Eigen::VectorXd& final_beta() const;
};

/// Index maximizing |x_j' (y - x beta)|; ties go to the lowest index.
int select_variable(const StandardizedDesign& design,
                    const Eigen::VectorXd& beta,
                    TieBreak tie_break = TieBreak::kLowestIndex);

/// The configured l1 cap, or the lasso bound max_lambda ||beta(lambda)||_1
/// when the config leaves it on auto.
double resolve_l1_cap(const StandardizedDesign& design,
                      const AfsConfig& config);

/// Adaptive forward stepwise path: repeatedly select the variable most
/// correlated with the residual, refit OLS on the active set, and blend
/// beta <- (1-rho) beta + rho ols. rho = 1 is plain forward stepwise.
///
/// Stops at max_steps, at the l1 cap (the crossing step is kept and
/// reported), on an exact fit, or when the next column is numerically
/// collinear with the active set (recorded as a stop reason, not an error).
AfsPath afs_fit(const StandardizedDesign& design, const AfsConfig& config);

/// Geometric epsilon schedule rho * 2^-t, t = 1..levels; granularity ladder
/// for the knot search in lar_recover_fit.
std::vector<double> default_eps_schedule(double rho, int levels = 40);

/// LAR-recovery variant: per outer step, the effective step size is pushed
/// to the boundary at which the selection criterion first switches to a
/// variable outside the active set, so recorded steps land on LAR knots (to
/// within the schedule's final epsilon). With lasso_mode, a coefficient
/// whose sign flips within a step is dropped at its zero crossing and the
/// active set refit, recovering the LASSO path.
AfsPath lar_recover_fit(const StandardizedDesign& design,
                        const AfsConfig& config,
                        const std::vector<double>& eps_schedule,
                        bool lasso_mode = false);

/// Soft-thresholding view of AFS under an orthonormal design: per-step,
/// per-variable thresholds lambda_{j,m} applied to the full-design OLS
/// coefficients. Entered variables use lambda = (1-rho)^ell_{j,m} |ols_j|
/// (ell = steps in the active set, inclusive); variables not yet entered
/// use the current decay level of the procedure.
struct SoftThresholdPath {
  std::vector<Eigen::VectorXd> betas;       // per step, length p
  std::vector<Eigen::VectorXd> thresholds;  // lambda_{j,m}, length p
  std::vector<Eigen::VectorXi> times_in_active;  // ell_{j,m}; 0 = not entered
  Eigen::VectorXd beta_ols;
};

SoftThresholdPath soft_threshold_path(const StandardizedDesign& design,
                                      const AfsConfig& config,
                                      bool allow_non_orthogonal = false);

/// Componentwise least-squares boosting: select j maximizing |x_j' r|, move
/// beta_j by nu times the univariate fit. Reference for the shrinkage
/// comparison against AFS.
std::vector<Eigen::VectorXd> l2boost_fit(const StandardizedDesign& design,
                                         double nu, int max_steps);

/// Max |x_j' x_k| deviation from the identity Gram; orthonormality check.
double max_gram_deviation(const StandardizedDesign& design);

}  // namespace afs
