#pragma once

#include <Eigen/Dense>

namespace afs {

/// Centered (and optionally unit-l2-scaled) design matrix together with the
/// back-transform metadata needed to report coefficients on the original
/// scale. Immutable after construction; safe to share across parallel fits.
struct StandardizedDesign {
  Eigen::MatrixXd x;           // n x p, columns centered, unit l2 if standardized
  Eigen::VectorXd y;           // centered response (raw response if y_centered is false)
  Eigen::VectorXd col_means;   // length p
  Eigen::VectorXd col_scales;  // length p, strictly positive
  double y_mean = 0.0;
  bool standardized = false;   // unit-norm columns
  bool y_centered = true;

  int n() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }

  /// Map model-scale slopes back to slopes on the raw predictor scale.
  Eigen::VectorXd original_slopes(const Eigen::VectorXd& beta) const;

  /// Intercept on the raw scale implied by model-scale slopes (plus an
  /// optional model-scale intercept, used by the logistic path).
  double original_intercept(const Eigen::VectorXd& beta,
                            double model_intercept = 0.0) const;

  /// Predictions on the raw scale for raw-scale rows.
  Eigen::VectorXd predict(const Eigen::MatrixXd& x_raw,
                          const Eigen::VectorXd& beta,
                          double model_intercept = 0.0) const;
};

/// Center columns of x_raw (and y_raw unless center_y is false); when
/// unit_norm is set, scale every column to unit l2 norm. Throws
/// ConstantColumn if a column has zero variance, DimensionMismatch if sizes
/// disagree.
StandardizedDesign standardize(const Eigen::MatrixXd& x_raw,
                               const Eigen::VectorXd& y_raw,
                               bool unit_norm = true, bool center_y = true);

}  // namespace afs
