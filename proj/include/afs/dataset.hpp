#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace afs {

enum class Family { kGaussian, kBinomial };

Family family_from_string(const std::string& s);
std::string to_string(Family f);

struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> feature_names;
  std::string response_name;
  Family family = Family::kGaussian;

  int n() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }
};

/// Parse a headered CSV; the response column is pulled out by name and every
/// other column must be numeric. Throws MissingColumn, NonNumericCell (with
/// row/column diagnostics), EmptyDataset, NonBinaryResponse.
Dataset load_csv(const std::string& path, const std::string& response,
                 Family family = Family::kGaussian);

/// Seeded permutation split; test gets round(test_fraction * n) rows.
/// Throws SplitTooSmall when either side is degenerate (test < 1 row,
/// train < 2 rows).
std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset,
                                             double test_fraction,
                                             std::uint64_t seed);

}  // namespace afs
