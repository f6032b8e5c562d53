#pragma once

#include <Eigen/Dense>
#include <vector>

#include "afs/path.hpp"
#include "afs/standardize.hpp"

namespace afs {

/// Polyhedral representation {y : Gamma y >= 0} of an AFS selection history
/// (selected sequence and signs up to a step), anchored at the observed
/// response. Rows are unit-normalized; rows that the construction requires
/// to hold strictly are flagged (a measure-zero distinction for continuous
/// responses).
struct SelectionEvent {
  Eigen::MatrixXd gamma;      // rows x n
  std::vector<bool> strict;
  std::vector<int> selected;  // j_1 .. j_k
  std::vector<int> signs;     // s_1 .. s_k
  int step = 0;
  Eigen::VectorXd y;          // observed response the event conditions on

  /// True when gamma * candidate >= -tol holds rowwise.
  bool contains(const Eigen::VectorXd& candidate, double tol = 0.0) const;
};

/// Build the selection polyhedron for the first k steps of a fitted path.
/// Each step contributes the 2(p-1) argmax inequalities plus repeated
/// strict rows for the previously active variables. Throws InfeasibleEvent
/// if the observed response violates a constructed row beyond tolerance
/// (which would indicate a construction bug).
SelectionEvent selection_polyhedron(const StandardizedDesign& design,
                                    const AfsPath& path, int k);

struct TruncationInterval {
  double vlo = 0.0;
  double vup = 0.0;
  bool degenerate = false;  // contrast orthogonal to every row
};

/// Truncation bounds of v'y implied by the polyhedron under y ~ N(theta,
/// sigma^2 I): the tightest (vlo, vup) with vlo < v'y < vup such that the
/// event holds iff v'y stays inside (given the orthogonal component).
TruncationInterval truncation_interval(const SelectionEvent& event,
                                       const Eigen::VectorXd& v, double sigma);

struct TruncatedTest {
  Eigen::VectorXd v;
  double statistic = 0.0;  // v'y
  double vlo = 0.0;
  double vup = 0.0;
  double sigma = 0.0;
  double pvalue = 1.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool underflow = false;
  bool degenerate = false;
};

/// Two-sided truncated-Gaussian test of H0: v'theta = null_value with a
/// test-inversion confidence interval at level 1 - alpha. Tail ratios are
/// evaluated in log space, so extreme truncations degrade gracefully (the
/// underflow flag reports total interval mass below 1e-300).
TruncatedTest tg_test(const SelectionEvent& event, const Eigen::VectorXd& v,
                      double sigma, double null_value, double alpha = 0.05);

enum class ContrastKind { kFullModel, kSubmodel };

struct Contrast {
  Eigen::VectorXd v;
  ContrastKind kind = ContrastKind::kFullModel;
  int variable = -1;
};

/// Contrast testing the coefficient of `variable`: the full-model OLS
/// functional when p < n, the active-submodel functional otherwise.
Contrast inference_contrast(const StandardizedDesign& design,
                            const std::vector<int>& active, int variable);

/// log of the standard normal survival function, accurate over the full
/// double range.
double log_norm_sf(double x);

}  // namespace afs
