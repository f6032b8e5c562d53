#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

namespace testutil {

inline Eigen::MatrixXd random_matrix(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd x(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = dist(rng);
  return x;
}

inline Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

/// Columns centered and exactly orthonormal: center a gaussian matrix, then
/// take the thin-QR basis (centering commutes with the column space, so the
/// basis columns stay mean-zero).
inline Eigen::MatrixXd orthonormal_centered(int n, int p, std::uint64_t seed) {
  Eigen::MatrixXd x = random_matrix(n, p, seed);
  x.rowwise() -= x.colwise().mean();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  return q;
}

/// Kolmogorov-Smirnov statistic against U(0, 1).
inline double ks_uniform(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double u = values[i];
    d = std::max(d, std::abs((i + 1) / n - u));
    d = std::max(d, std::abs(u - i / n));
  }
  return d;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace testutil
