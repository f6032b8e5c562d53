#include "afs/gram.hpp"

#include <algorithm>

#include "afs/errors.hpp"

namespace afs {

bool GramState::contains(int j) const {
  return std::find(active_.begin(), active_.end(), j) != active_.end();
}

void GramState::extend(const StandardizedDesign& design, int j) {
  if (j < 0 || j >= design.p()) {
    throw DimensionMismatch("column index out of range");
  }
  if (contains(j)) {
    throw SingularGram("column " + std::to_string(j) + " already active");
  }
  const Eigen::VectorXd xj = design.x.col(j);
  const double d = xj.squaredNorm();

  if (active_.empty()) {
    if (d <= kSingularTol) {
      throw SingularGram("column " + std::to_string(j) + " has zero norm");
    }
    active_.push_back(j);
    gram_inv_ = Eigen::MatrixXd::Constant(1, 1, 1.0 / d);
    xty_ = Eigen::VectorXd::Constant(1, xj.dot(design.y));
    return;
  }

  const int k = size();
  Eigen::VectorXd b(k);
  for (int i = 0; i < k; ++i) b[i] = design.x.col(active_[i]).dot(xj);

  const Eigen::VectorXd mb = gram_inv_ * b;
  const double schur = d - b.dot(mb);
  if (schur <= kSingularTol) {
    throw SingularGram("column " + std::to_string(j) +
                       " is numerically in the span of the active set");
  }

  Eigen::MatrixXd next(k + 1, k + 1);
  next.topLeftCorner(k, k) = gram_inv_ + (mb * mb.transpose()) / schur;
  next.topRightCorner(k, 1) = -mb / schur;
  next.bottomLeftCorner(1, k) = -mb.transpose() / schur;
  next(k, k) = 1.0 / schur;

  gram_inv_ = std::move(next);
  xty_.conservativeResize(k + 1);
  xty_[k] = xj.dot(design.y);
  active_.push_back(j);
}

GramState GramState::extended(const StandardizedDesign& design, int j) const {
  GramState out = *this;
  out.extend(design, j);
  return out;
}

Eigen::VectorXd GramState::ols() const {
  if (active_.empty()) throw EmptyActiveSet();
  return gram_inv_ * xty_;
}

}  // namespace afs
