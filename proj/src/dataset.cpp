#include "afs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "afs/errors.hpp"
#include "afs/rng.hpp"

namespace afs {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, int row, const std::string& col) {
  const std::string t = trim(cell);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw NonNumericCell(row, col, cell);
  }
  return value;
}

}  // namespace

Family family_from_string(const std::string& s) {
  if (s == "gaussian") return Family::kGaussian;
  if (s == "binomial") return Family::kBinomial;
  throw InvalidConfig("unknown family '" + s + "'");
}

std::string to_string(Family f) {
  return f == Family::kGaussian ? "gaussian" : "binomial";
}

Dataset load_csv(const std::string& path, const std::string& response,
                 Family family) {
  std::ifstream in(path);
  if (!in) throw EmptyDataset("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw EmptyDataset("'" + path + "' is empty");
  const std::vector<std::string> header = split_line(line);

  int response_col = -1;
  for (size_t j = 0; j < header.size(); ++j) {
    if (header[j] == response) response_col = static_cast<int>(j);
  }
  if (response_col < 0) throw MissingColumn(response);

  Dataset ds;
  ds.family = family;
  ds.response_name = response;
  for (size_t j = 0; j < header.size(); ++j) {
    if (static_cast<int>(j) != response_col)
      ds.feature_names.push_back(header[j]);
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> ys;
  int row_index = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      throw NonNumericCell(row_index, "<row>",
                           "expected " + std::to_string(header.size()) +
                               " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(header.size() - 1);
    for (size_t j = 0; j < cells.size(); ++j) {
      const double v = parse_cell(cells[j], row_index, header[j]);
      if (static_cast<int>(j) == response_col) {
        ys.push_back(v);
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
    ++row_index;
  }
  if (rows.empty()) throw EmptyDataset("'" + path + "' has no data rows");

  const int n = static_cast<int>(rows.size());
  const int p = static_cast<int>(ds.feature_names.size());
  ds.x.resize(n, p);
  ds.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) ds.x(i, j) = rows[i][j];
    ds.y[i] = ys[i];
  }
  if (family == Family::kBinomial) {
    for (int i = 0; i < n; ++i) {
      if (ds.y[i] != 0.0 && ds.y[i] != 1.0) {
        throw NonBinaryResponse("response row " + std::to_string(i) +
                                " is not 0/1");
      }
    }
  }
  return ds;
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset,
                                             double test_fraction,
                                             std::uint64_t seed) {
  const int n = dataset.n();
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InvalidConfig("test_fraction must lie in (0, 1)");
  }
  const int n_test = static_cast<int>(std::lround(test_fraction * n));
  const int n_train = n - n_test;
  if (n_test < 1 || n_train < 2) {
    throw SplitTooSmall("split " + std::to_string(n_train) + "/" +
                        std::to_string(n_test) + " is degenerate");
  }

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(mix_seed(seed, 0x5e17));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> test_idx(perm.begin(), perm.begin() + n_test);
  std::vector<int> train_idx(perm.begin() + n_test, perm.end());
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  auto subset = [&](const std::vector<int>& idx) {
    Dataset out;
    out.feature_names = dataset.feature_names;
    out.response_name = dataset.response_name;
    out.family = dataset.family;
    out.x.resize(static_cast<int>(idx.size()), dataset.p());
    out.y.resize(static_cast<int>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i) {
      out.x.row(static_cast<int>(i)) = dataset.x.row(idx[i]);
      out.y[static_cast<int>(i)] = dataset.y[idx[i]];
    }
    return out;
  };
  return {subset(train_idx), subset(test_idx)};
}

}  // namespace afs
