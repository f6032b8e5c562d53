#pragma once

#include <Eigen/Dense>
#include <vector>

#include "afs/standardize.hpp"

namespace afs {

/// Incrementally maintained inverse Gram matrix of the active columns.
/// Extension costs O(|A|^2) via the bordering (block-inverse) formula; the
/// state is a value type, copied or extended in place by a single owner.
class GramState {
 public:
  GramState() = default;

  const std::vector<int>& active() const { return active_; }
  const Eigen::MatrixXd& gram_inv() const { return gram_inv_; }
  const Eigen::VectorXd& xty() const { return xty_; }
  bool empty() const { return active_.empty(); }
  int size() const { return static_cast<int>(active_.size()); }
  bool contains(int j) const;

  /// Append column j to the active set. Throws SingularGram when the Schur
  /// complement of the new column falls below tolerance (the column is
  /// numerically in the span of the active ones).
  void extend(const StandardizedDesign& design, int j);

  /// Copying variant of extend().
  GramState extended(const StandardizedDesign& design, int j) const;

  /// OLS coefficients of y on the active columns (length |A|, ordered as
  /// active()). Throws EmptyActiveSet.
  Eigen::VectorXd ols() const;

  static constexpr double kSingularTol = 1e-10;

 private:
  std::vector<int> active_;
  Eigen::MatrixXd gram_inv_;
  Eigen::VectorXd xty_;
};

}  // namespace afs
