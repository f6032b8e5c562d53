#include "afs/standardize.hpp"

#include <cmath>

#include "afs/errors.hpp"

namespace afs {

Eigen::VectorXd StandardizedDesign::original_slopes(
    const Eigen::VectorXd& beta) const {
  if (beta.size() != col_scales.size()) {
    throw DimensionMismatch("coefficient length does not match design");
  }
  return beta.cwiseQuotient(col_scales);
}

double StandardizedDesign::original_intercept(const Eigen::VectorXd& beta,
                                              double model_intercept) const {
  const Eigen::VectorXd slopes = original_slopes(beta);
  return y_mean + model_intercept - slopes.dot(col_means);
}

Eigen::VectorXd StandardizedDesign::predict(const Eigen::MatrixXd& x_raw,
                                            const Eigen::VectorXd& beta,
                                            double model_intercept) const {
  if (x_raw.cols() != col_scales.size()) {
    throw DimensionMismatch("prediction matrix has wrong column count");
  }
  const Eigen::VectorXd slopes = original_slopes(beta);
  return (x_raw * slopes).array() + original_intercept(beta, model_intercept);
}

StandardizedDesign standardize(const Eigen::MatrixXd& x_raw,
                               const Eigen::VectorXd& y_raw, bool unit_norm,
                               bool center_y) {
  const auto n = x_raw.rows();
  const auto p = x_raw.cols();
  if (y_raw.size() != n) {
    throw DimensionMismatch("x has " + std::to_string(n) + " rows but y has " +
                            std::to_string(y_raw.size()) + " entries");
  }
  if (n < 2) {
    throw DimensionMismatch("need at least 2 rows");
  }

  StandardizedDesign d;
  d.col_means = x_raw.colwise().mean();
  d.x = x_raw.rowwise() - d.col_means.transpose();
  d.col_scales = Eigen::VectorXd::Ones(p);
  d.standardized = unit_norm;
  d.y_centered = center_y;

  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = d.x.col(j).norm();
    // Zero-variance columns cannot be selected fairly and break unit scaling.
    const double tol =
        1e-12 * std::sqrt(static_cast<double>(n)) * std::max(1.0, std::abs(d.col_means[j]));
    if (norm <= tol) {
      throw ConstantColumn(static_cast<int>(j));
    }
    if (unit_norm) {
      d.col_scales[j] = norm;
      d.x.col(j) /= norm;
    }
  }

  if (center_y) {
    d.y_mean = y_raw.mean();
    d.y = y_raw.array() - d.y_mean;
  } else {
    d.y_mean = 0.0;
    d.y = y_raw;
  }
  return d;
}

}  // namespace afs
