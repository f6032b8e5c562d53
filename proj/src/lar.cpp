#include "afs/lar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afs/errors.hpp"
#include "afs/gram.hpp"

namespace afs {

std::vector<int> LarPath::entry_order() const {
  return knots.empty() ? std::vector<int>{} : knots.back().active;
}

Eigen::VectorXd LarPath::at_l1(double t) const {
  if (knots.empty()) throw Error("empty LAR path");
  const int p = static_cast<int>(knots.front().beta.size());
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(p);
  double prev_l1 = 0.0;
  for (const auto& knot : knots) {
    if (t <= knot.l1) {
      const double seg = knot.l1 - prev_l1;
      if (seg <= 0.0) return knot.beta;
      const double w = (t - prev_l1) / seg;
      return prev + w * (knot.beta - prev);
    }
    prev = knot.beta;
    prev_l1 = knot.l1;
  }
  return knots.back().beta;
}

LarPath lar_path(const StandardizedDesign& design, int max_knots) {
  const int n = design.n();
  const int p = design.p();
  if (max_knots < 1) throw InvalidConfig("max_knots must be at least 1");
  const int cap = std::min(max_knots, std::min(n - 1, p));

  LarPath path;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd r = design.y;
  GramState state;

  auto pick_entry = [&](const Eigen::VectorXd& c) {
    int best = -1;
    double best_val = -1.0;
    for (int j = 0; j < p; ++j) {
      if (state.contains(j)) continue;
      const double v = std::abs(c[j]);
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    // report exact near-ties; selection keeps the lowest index
    for (int j = best + 1; j < p; ++j) {
      if (state.contains(j)) continue;
      if (std::abs(std::abs(c[j]) - best_val) <= 1e-12 * (1.0 + best_val)) {
        path.warnings.push_back("entry tie between variables " +
                                std::to_string(best) + " and " +
                                std::to_string(j));
      }
    }
    return best;
  };

  {
    const Eigen::VectorXd c0 = design.x.transpose() * r;
    if (c0.cwiseAbs().maxCoeff() == 0.0) return path;  // nothing correlates
    try {
      state.extend(design, pick_entry(c0));
    } catch (const SingularGram& e) {
      throw DegenerateDirection(e.what());
    }
  }

  for (int k = 0; k < cap; ++k) {
    const int na = state.size();
    const Eigen::VectorXd c = design.x.transpose() * r;

    Eigen::VectorXd s(na);
    double cmax = 0.0;
    for (int i = 0; i < na; ++i) {
      const double ci = c[state.active()[i]];
      s[i] = ci >= 0.0 ? 1.0 : -1.0;
      cmax = std::max(cmax, std::abs(ci));
    }

    const Eigen::VectorXd ginv_s = state.gram_inv() * s;
    const double denom = s.dot(ginv_s);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
      throw DegenerateDirection("equiangular system is singular");
    }
    const double a_norm = 1.0 / std::sqrt(denom);
    const Eigen::VectorXd w = a_norm * ginv_s;  // direction over active coords
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < na; ++i) u += w[i] * design.x.col(state.active()[i]);
    const Eigen::VectorXd a = design.x.transpose() * u;

    const double gamma_full = cmax / a_norm;  // lands on the active-set OLS
    double gamma = std::numeric_limits<double>::infinity();
    int next_j = -1;
    for (int j = 0; j < p; ++j) {
      if (state.contains(j)) continue;
      for (const double cand : {(cmax - c[j]) / (a_norm - a[j]),
                                (cmax + c[j]) / (a_norm + a[j])}) {
        if (cand > 1e-12 && cand < gamma) {
          gamma = cand;
          next_j = j;
        }
      }
    }

    const bool natural_end = next_j < 0 || gamma >= gamma_full;
    if (natural_end) gamma = gamma_full;

    for (int i = 0; i < na; ++i) beta[state.active()[i]] += gamma * w[i];
    r -= gamma * u;

    LarKnot knot;
    knot.beta = beta;
    knot.active = state.active();
    knot.l1 = beta.lpNorm<1>();
    path.knots.push_back(std::move(knot));

    if (natural_end || k + 1 == cap) break;
    try {
      state.extend(design, next_j);
    } catch (const SingularGram& e) {
      throw DegenerateDirection(e.what());
    }
  }
  return path;
}

}  // namespace afs
