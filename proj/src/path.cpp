#include "afs/path.hpp"

#include <cmath>
#include <limits>

#include "afs/errors.hpp"
#include "afs/lasso.hpp"

namespace afs {

namespace {

constexpr double kExactFitTol = 1e-12;

double soft(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

// Embed active-set coefficients into a length-p vector.
Eigen::VectorXd embed(const GramState& state, const Eigen::VectorXd& nu_active,
                      int p) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p);
  const auto& active = state.active();
  for (size_t i = 0; i < active.size(); ++i) out[active[i]] = nu_active[i];
  return out;
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kMaxSteps: return "max_steps";
    case StopReason::kL1CapReached: return "l1_cap_reached";
    case StopReason::kSingularGram: return "singular_gram";
    case StopReason::kExactFit: return "exact_fit";
    case StopReason::kSeparable: return "separable";
  }
  return "unknown";
}

void AfsConfig::validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw InvalidConfig("rho must lie in (0, 1]");
  }
  if (max_steps < 1) {
    throw InvalidConfig("max_steps must be at least 1");
  }
  if (l1_cap && !(*l1_cap >= 0.0)) {
    throw InvalidConfig("l1_cap must be nonnegative");
  }
}

const Eigen::VectorXd& AfsPath::final_beta() const {
  static const Eigen::VectorXd kEmpty;
  return steps.empty() ? kEmpty : steps.back().beta;
}

int select_variable(const StandardizedDesign& design,
                    const Eigen::VectorXd& beta, TieBreak) {
  const Eigen::VectorXd r = design.y - design.x * beta;
  const Eigen::VectorXd c = design.x.transpose() * r;
  int best = 0;
  double best_val = std::abs(c[0]);
  for (int j = 1; j < c.size(); ++j) {
    const double v = std::abs(c[j]);
    if (v > best_val) {  // strict: ties stay at the lowest index
      best_val = v;
      best = j;
    }
  }
  return best;
}

double max_gram_deviation(const StandardizedDesign& design) {
  const int p = design.p();
  Eigen::MatrixXd g = design.x.transpose() * design.x;
  g -= Eigen::MatrixXd::Identity(p, p);
  return g.cwiseAbs().maxCoeff();
}

double resolve_l1_cap(const StandardizedDesign& design,
                      const AfsConfig& config) {
  return config.l1_cap ? *config.l1_cap : max_l1_norm(design);
}

AfsPath afs_fit(const StandardizedDesign& design, const AfsConfig& config) {
  config.validate();
  const int p = design.p();
  const double h = resolve_l1_cap(design, config);
  const double y2 = design.y.squaredNorm();

  AfsPath path;
  path.config = config;
  path.l1_cap_used = h;
  path.stop_reason = StopReason::kMaxSteps;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = design.y;
  GramState state;

  for (int m = 1; m <= config.max_steps; ++m) {
    if (y2 == 0.0 || residual.squaredNorm() < kExactFitTol * y2) {
      path.stop_reason = StopReason::kExactFit;
      break;
    }
    const Eigen::VectorXd c = design.x.transpose() * residual;
    int j = 0;
    double best = std::abs(c[0]);
    for (int i = 1; i < p; ++i) {
      if (std::abs(c[i]) > best) {
        best = std::abs(c[i]);
        j = i;
      }
    }
    const bool entered = !state.contains(j);
    if (entered) {
      try {
        state.extend(design, j);
      } catch (const SingularGram&) {
        path.stop_reason = StopReason::kSingularGram;
        break;
      }
    }

    const Eigen::VectorXd nu = embed(state, state.ols(), p);
    beta = (1.0 - config.rho) * beta + config.rho * nu;
    residual = design.y - design.x * beta;

    AfsStep step;
    step.m = m;
    step.beta = beta;
    step.chosen = j;
    step.entered = entered;
    step.active = state.active();
    step.rss = residual.squaredNorm();
    step.l1 = beta.lpNorm<1>();
    path.steps.push_back(std::move(step));

    if (path.steps.back().l1 >= h) {
      path.stop_reason = StopReason::kL1CapReached;
      break;
    }
  }
  return path;
}

std::vector<double> default_eps_schedule(double rho, int levels) {
  std::vector<double> eps;
  eps.reserve(levels);
  double e = rho;
  for (int t = 0; t < levels; ++t) {
    e *= 0.5;
    eps.push_back(e);
  }
  return eps;
}

AfsPath lar_recover_fit(const StandardizedDesign& design,
                        const AfsConfig& config,
                        const std::vector<double>& eps_schedule,
                        bool lasso_mode) {
  config.validate();
  if (eps_schedule.empty()) {
    throw InvalidConfig("eps_schedule must be nonempty");
  }
  for (size_t i = 0; i + 1 < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i + 1] < eps_schedule[i]) || !(eps_schedule[i] > 0.0)) {
      throw InvalidConfig("eps_schedule must be strictly decreasing and positive");
    }
  }
  const int p = design.p();
  const double h = resolve_l1_cap(design, config);
  const double y2 = design.y.squaredNorm();

  AfsPath path;
  path.config = config;
  path.l1_cap_used = h;
  path.stop_reason = StopReason::kMaxSteps;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  GramState state;
  bool segment_pending = false;  // current segment has not reached its knot

  auto rebuild = [&](const std::vector<int>& active) {
    GramState fresh;
    for (int a : active) fresh.extend(design, a);
    state = std::move(fresh);
  };

  int m = 1;
  for (; m <= config.max_steps; ++m) {
    const Eigen::VectorXd residual = design.y - design.x * beta;
    if (y2 == 0.0 || residual.squaredNorm() < kExactFitTol * y2) {
      path.stop_reason = StopReason::kExactFit;
      segment_pending = false;
      break;
    }
    const int j = select_variable(design, beta, config.tie_break);
    const bool entered = !state.contains(j);
    if (entered) {
      try {
        state.extend(design, j);
      } catch (const SingularGram&) {
        path.stop_reason = StopReason::kSingularGram;
        segment_pending = false;
        break;
      }
      segment_pending = false;
    }

    const Eigen::VectorXd nu = embed(state, state.ols(), p);

    // True when stepping a fraction zeta toward nu makes the criterion pick
    // a variable outside the current active set.
    auto switches = [&](double zeta) {
      const Eigen::VectorXd trial = (1.0 - zeta) * beta + zeta * nu;
      return !state.contains(select_variable(design, trial, config.tie_break));
    };

    double step_size;
    bool at_knot;
    if (state.size() == p) {
      step_size = 1.0;  // last segment: land on the full OLS fit
      at_knot = true;
    } else if (!switches(config.rho)) {
      step_size = config.rho;  // knot out of reach; plain AFS step
      at_knot = false;
      segment_pending = true;
    } else {
      double lo = 0.0, hi = config.rho;
      for (double eps : eps_schedule) {
        const double cand = lo + eps;
        if (cand >= hi) continue;
        if (switches(cand)) {
          hi = cand;
        } else {
          lo = cand;
        }
      }
      step_size = hi;  // smallest step found that triggers a new selection
      at_knot = true;
      segment_pending = false;
    }

    Eigen::VectorXd next = (1.0 - step_size) * beta + step_size * nu;

    int dropped = -1;
    if (lasso_mode) {
      // Truncate at the first sign flip and remove that variable.
      double zeta0 = std::numeric_limits<double>::infinity();
      for (int a : state.active()) {
        if (beta[a] != 0.0 && next[a] != 0.0 &&
            std::signbit(beta[a]) != std::signbit(next[a])) {
          const double z = beta[a] / (beta[a] - nu[a]);
          if (z < zeta0) {
            zeta0 = z;
            dropped = a;
          }
        }
      }
      if (dropped >= 0) {
        next = (1.0 - zeta0) * beta + zeta0 * nu;
        next[dropped] = 0.0;
        std::vector<int> remaining;
        for (int a : state.active())
          if (a != dropped) remaining.push_back(a);
        rebuild(remaining);
        at_knot = true;
        segment_pending = false;
      }
    }

    beta = std::move(next);

    AfsStep step;
    step.m = m;
    step.beta = beta;
    step.chosen = j;
    step.entered = entered;
    step.dropped = dropped;
    step.at_knot = at_knot;
    step.active = state.active();
    step.rss = (design.y - design.x * beta).squaredNorm();
    step.l1 = beta.lpNorm<1>();
    path.steps.push_back(std::move(step));

    if (path.steps.back().l1 >= h) {
      path.stop_reason = StopReason::kL1CapReached;
      segment_pending = false;
      break;
    }
  }

  if (m > config.max_steps && segment_pending) {
    throw ScheduleExhausted(
        "no step size in the schedule triggered a new-variable selection "
        "before max_steps");
  }
  return path;
}

SoftThresholdPath soft_threshold_path(const StandardizedDesign& design,
                                      const AfsConfig& config,
                                      bool allow_non_orthogonal) {
  config.validate();
  const double dev = max_gram_deviation(design);
  if (dev > 1e-8 && !allow_non_orthogonal) {
    throw NonOrthogonalDesign("design gram deviates from identity by " +
                              std::to_string(dev));
  }
  const int p = design.p();
  const double rho = config.rho;

  SoftThresholdPath out;
  if (dev <= 1e-8) {
    out.beta_ols = design.x.transpose() * design.y;
  } else {
    out.beta_ols = design.x.colPivHouseholderQr().solve(design.y);
  }

  Eigen::VectorXi ell = Eigen::VectorXi::Zero(p);
  for (int m = 1; m <= config.max_steps; ++m) {
    // Selection on the idealized decayed correlations.
    int j = 0;
    double best = -1.0;
    for (int i = 0; i < p; ++i) {
      const double crit = std::abs(out.beta_ols[i]) * std::pow(1.0 - rho, ell[i]);
      if (crit > best) {
        best = crit;
        j = i;
      }
    }
    for (int i = 0; i < p; ++i)
      if (ell[i] > 0) ++ell[i];
    if (ell[j] == 0) ell[j] = 1;

    Eigen::VectorXd lambda(p);
    double level = 0.0;
    for (int i = 0; i < p; ++i) {
      if (ell[i] > 0) {
        lambda[i] = std::pow(1.0 - rho, ell[i]) * std::abs(out.beta_ols[i]);
        level = std::max(level, lambda[i]);
      }
    }
    Eigen::VectorXd beta(p);
    for (int i = 0; i < p; ++i) {
      if (ell[i] == 0) lambda[i] = level;
      beta[i] = soft(out.beta_ols[i], lambda[i]);
    }
    out.betas.push_back(std::move(beta));
    out.thresholds.push_back(std::move(lambda));
    out.times_in_active.push_back(ell);
  }
  return out;
}

std::vector<Eigen::VectorXd> l2boost_fit(const StandardizedDesign& design,
                                         double nu, int max_steps) {
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw InvalidConfig("nu must lie in (0, 1]");
  }
  const int p = design.p();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd r = design.y;
  Eigen::VectorXd col_sq(p);
  for (int j = 0; j < p; ++j) col_sq[j] = design.x.col(j).squaredNorm();

  std::vector<Eigen::VectorXd> path;
  path.reserve(max_steps);
  for (int m = 0; m < max_steps; ++m) {
    const Eigen::VectorXd c = design.x.transpose() * r;
    int j = 0;
    double best = std::abs(c[0]);
    for (int i = 1; i < p; ++i) {
      if (std::abs(c[i]) > best) {
        best = std::abs(c[i]);
        j = i;
      }
    }
    const double gamma = c[j] / col_sq[j];  // univariate OLS on the residual
    beta[j] += nu * gamma;
    r -= nu * gamma * design.x.col(j);
    path.push_back(beta);
  }
  return path;
}

}  // namespace afs
