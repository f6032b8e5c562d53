#include "afs/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afs/errors.hpp"
#include "afs/gram.hpp"

namespace afs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Conditional CDF P(Z <= z | Z in (a, b)) for standard normal Z, evaluated
// through log survival-function differences so far-out truncations do not
// underflow. Two mirrored forms; each is accurate where its value is small.
double truncated_cdf(double z, double a, double b) {
  const double la = a == -kInf ? 0.0 : log_norm_sf(a);
  const double lb = b == kInf ? -kInf : log_norm_sf(b);
  const double lz = log_norm_sf(z);
  // right-tail form: (sf(a) - sf(z)) / (sf(a) - sf(b))
  const double num = std::expm1(lz - la);
  const double den = std::expm1(lb - la);
  double f_right = den != 0.0 ? num / den : 0.0;

  const double lma = a == -kInf ? -kInf : log_norm_sf(-a);
  const double lmb = b == kInf ? 0.0 : log_norm_sf(-b);
  const double lmz = log_norm_sf(-z);
  // left-tail form for 1 - F
  const double gnum = std::expm1(lmz - lmb);
  const double gden = std::expm1(lma - lmb);
  double g_left = gden != 0.0 ? gnum / gden : 0.0;

  const double f = f_right <= 0.5 ? f_right : 1.0 - g_left;
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace

double log_norm_sf(double x) {
  if (x == kInf) return -kInf;
  if (x == -kInf) return 0.0;
  if (x > 30.0) {
    // asymptotic expansion of Mills ratio
    const double x2 = x * x;
    return -0.5 * x2 - std::log(x) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
  }
  if (x < -30.0) {
    return std::log1p(-std::exp(log_norm_sf(-x)));
  }
  return std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
}

bool SelectionEvent::contains(const Eigen::VectorXd& candidate,
                              double tol) const {
  return ((gamma * candidate).array() >= -tol).all();
}

SelectionEvent selection_polyhedron(const StandardizedDesign& design,
                                    const AfsPath& path, int k) {
  if (k < 1 || k > static_cast<int>(path.steps.size())) {
    throw InvalidConfig("step k outside the fitted path");
  }
  const int n = design.n();
  const int p = design.p();
  const double rho = path.config.rho;
  const Eigen::MatrixXd gram = design.x.transpose() * design.x;

  SelectionEvent event;
  event.step = k;
  event.y = design.y;

  // beta_m = coef_map_m * y, mirroring the fit recursion exactly.
  Eigen::MatrixXd coef_map = Eigen::MatrixXd::Zero(p, n);
  GramState state;

  std::vector<Eigen::VectorXd> rows;
  std::vector<bool> strict;

  for (int i = 0; i < k; ++i) {
    const AfsStep& step = path.steps[i];
    // B = X' (I - X coef_map): row j is the criterion functional for x_j.
    const Eigen::MatrixXd b = design.x.transpose() - gram * coef_map;
    const Eigen::VectorXd c_obs = b * design.y;
    const int ji = step.chosen;
    const int s = c_obs[ji] >= 0.0 ? 1 : -1;
    event.selected.push_back(ji);
    event.signs.push_back(s);

    const Eigen::VectorXd lead = s * b.row(ji).transpose();
    for (int j = 0; j < p; ++j) {
      if (j == ji) continue;
      rows.push_back(lead - b.row(j).transpose());
      strict.push_back(false);
      rows.push_back(lead + b.row(j).transpose());
      strict.push_back(false);
    }
    // repeated strict rows for variables already active before this step
    for (int a : state.active()) {
      if (a == ji) continue;
      rows.push_back(lead - b.row(a).transpose());
      strict.push_back(true);
      rows.push_back(lead + b.row(a).transpose());
      strict.push_back(true);
    }

    if (step.entered) state.extend(design, ji);
    Eigen::MatrixXd ols_map = Eigen::MatrixXd::Zero(p, n);
    const Eigen::MatrixXd s_map =
        state.gram_inv() *
        design.x(Eigen::all, state.active()).transpose();
    for (int a = 0; a < state.size(); ++a) {
      ols_map.row(state.active()[a]) = s_map.row(a);
    }
    coef_map = (1.0 - rho) * coef_map + rho * ols_map;
  }

  event.gamma.resize(static_cast<int>(rows.size()), n);
  event.strict = std::move(strict);
  const double feas_tol = 1e-8 * (1.0 + design.y.norm());
  for (size_t r = 0; r < rows.size(); ++r) {
    const double norm = rows[r].norm();
    const Eigen::VectorXd row = norm > 0.0 ? (rows[r] / norm).eval() : rows[r];
    if (row.dot(design.y) < -feas_tol) {
      throw InfeasibleEvent("observed response violates constructed row " +
                            std::to_string(r));
    }
    event.gamma.row(static_cast<int>(r)) = row;
  }
  return event;
}

TruncationInterval truncation_interval(const SelectionEvent& event,
                                       const Eigen::VectorXd& v,
                                       double /*sigma*/) {
  if (v.size() != event.y.size() || v.norm() == 0.0) {
    throw InvalidConfig("contrast must be a nonzero length-n vector");
  }
  const Eigen::VectorXd c = v / v.squaredNorm();
  const double z = v.dot(event.y);
  const Eigen::VectorXd w = event.y - c * z;

  TruncationInterval out;
  out.vlo = -kInf;
  out.vup = kInf;
  out.degenerate = true;

  const double atol = 1e-12 * c.norm();
  for (int r = 0; r < event.gamma.rows(); ++r) {
    const double a = event.gamma.row(r).dot(c);
    const double b = event.gamma.row(r).dot(w);
    if (a > atol) {
      out.vlo = std::max(out.vlo, -b / a);
      out.degenerate = false;
    } else if (a < -atol) {
      out.vup = std::min(out.vup, -b / a);
      out.degenerate = false;
    }
  }
  return out;
}

TruncatedTest tg_test(const SelectionEvent& event, const Eigen::VectorXd& v,
                      double sigma, double null_value, double alpha) {
  if (!(sigma > 0.0)) throw InvalidConfig("sigma must be positive");
  const TruncationInterval ti = truncation_interval(event, v, sigma);

  TruncatedTest test;
  test.v = v;
  test.vlo = ti.vlo;
  test.vup = ti.vup;
  test.degenerate = ti.degenerate;
  test.sigma = sigma;
  test.statistic = v.dot(event.y);

  const double sd = sigma * v.norm();
  auto cdf_at = [&](double mu) {
    return truncated_cdf((test.statistic - mu) / sd,
                         ti.vlo == -kInf ? -kInf : (ti.vlo - mu) / sd,
                         ti.vup == kInf ? kInf : (ti.vup - mu) / sd);
  };

  const double f = cdf_at(null_value);
  test.pvalue = std::clamp(2.0 * std::min(f, 1.0 - f), 0.0, 1.0);

  {
    const double la =
        ti.vlo == -kInf ? 0.0 : log_norm_sf((ti.vlo - null_value) / sd);
    const double lmb =
        ti.vup == kInf ? 0.0 : log_norm_sf(-(ti.vup - null_value) / sd);
    if (std::max(la, lmb) < std::log(1e-300)) test.underflow = true;
  }

  // Invert the interval: cdf_at is decreasing in mu.
  auto solve = [&](double target) {
    double lo = test.statistic, hi = test.statistic;
    double width = sd;
    while (cdf_at(lo) < target && width < 1e8 * sd) {
      lo -= width;
      width *= 2.0;
    }
    width = sd;
    while (cdf_at(hi) > target && width < 1e8 * sd) {
      hi += width;
      width *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (cdf_at(mid) >= target) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-10 * sd) break;
    }
    return 0.5 * (lo + hi);
  };
  test.ci_lo = solve(1.0 - alpha / 2.0);
  test.ci_hi = solve(alpha / 2.0);
  return test;
}

Contrast inference_contrast(const StandardizedDesign& design,
                            const std::vector<int>& active, int variable) {
  Contrast out;
  out.variable = variable;
  if (design.p() < design.n()) {
    out.kind = ContrastKind::kFullModel;
    const Eigen::MatrixXd gram = design.x.transpose() * design.x;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(design.p());
    e[variable] = 1.0;
    out.v = design.x * gram.ldlt().solve(e);
  } else {
    out.kind = ContrastKind::kSubmodel;
    const auto pos = std::find(active.begin(), active.end(), variable);
    if (pos == active.end()) {
      throw InvalidConfig("variable is not in the active set");
    }
    const Eigen::MatrixXd xa = design.x(Eigen::all, active);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<int>(active.size()));
    e[std::distance(active.begin(), pos)] = 1.0;
    out.v = xa * (xa.transpose() * xa).ldlt().solve(e);
  }
  return out;
}

}  // namespace afs
