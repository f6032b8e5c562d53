#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "afs/standardize.hpp"

namespace afs {

/// Exact least angle regression path. The coefficient vector is piecewise
/// linear between knots; within a segment every active variable keeps the
/// same absolute correlation with the residual.
struct LarKnot {
  Eigen::VectorXd beta;
  std::vector<int> active;  // in entry order
  double l1 = 0.0;
};

struct LarPath {
  std::vector<LarKnot> knots;
  std::vector<std::string> warnings;  // tie reports

  /// Entry order of variables along the path.
  std::vector<int> entry_order() const;

  /// Coefficients at l1-norm t (linear interpolation between knots,
  /// clamped to the last knot).
  Eigen::VectorXd at_l1(double t) const;
};

/// Knot-by-knot LAR: equiangular direction over the active set, minimum
/// positive step to the next correlation tie. Stops after
/// min(max_knots, min(n - 1, p)) knots. Throws DegenerateDirection when the
/// equiangular system is singular.
LarPath lar_path(const StandardizedDesign& design, int max_knots);

}  // namespace afs
