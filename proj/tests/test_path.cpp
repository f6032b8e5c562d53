#include <doctest.h>

#include <cmath>
#include <map>

#include "afs/errors.hpp"
#include "afs/path.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace afs;

namespace {

StandardizedDesign gaussian_design(int n, int p, std::uint64_t seed,
                                   double noise = 1.0, int s0 = 0,
                                   double coef = 1.0) {
  Eigen::MatrixXd x = testutil::random_matrix(n, p, seed);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta.head(s0).setConstant(coef);
  Eigen::VectorXd y = x * beta + noise * testutil::random_vector(n, seed + 1);
  return standardize(x, y, true);
}

std::map<int, int> entry_steps(const AfsPath& path) {
  std::map<int, int> k_of;
  for (const auto& s : path.steps) {
    if (s.entered) k_of[s.chosen] = s.m;
  }
  return k_of;
}

}  // namespace

TEST_CASE("select_variable picks the only signal column") {
  auto x = testutil::orthonormal_centered(30, 4, 31);
  Eigen::VectorXd y = 3.0 * x.col(1);
  StandardizedDesign d;
  d.x = x;
  d.y = y;
  d.col_means = Eigen::VectorXd::Zero(4);
  d.col_scales = Eigen::VectorXd::Ones(4);
  CHECK(select_variable(d, Eigen::VectorXd::Zero(4)) == 1);
}

TEST_CASE("zero criterion falls back to the lowest index") {
  auto x = testutil::orthonormal_centered(20, 3, 32);
  StandardizedDesign d;
  d.x = x;
  d.y = Eigen::VectorXd::Zero(20);
  d.col_means = Eigen::VectorXd::Zero(3);
  d.col_scales = Eigen::VectorXd::Ones(3);
  CHECK(select_variable(d, Eigen::VectorXd::Zero(3)) == 0);
}

TEST_CASE("exact ties break to the lowest index") {
  auto x = testutil::orthonormal_centered(20, 3, 33);
  StandardizedDesign d;
  d.x = x;
  d.y = x.col(1) + x.col(2);  // equal correlation on columns 1 and 2
  d.col_means = Eigen::VectorXd::Zero(3);
  d.col_scales = Eigen::VectorXd::Ones(3);
  CHECK(select_variable(d, Eigen::VectorXd::Zero(3)) == 1);
}

TEST_CASE("select_variable matches the exhaustive scan") {
  auto d = gaussian_design(50, 10, 34, 1.0, 3, 2.0);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::VectorXd beta = 0.3 * testutil::random_vector(10, 35 + rep);
    const Eigen::VectorXd r = d.y - d.x * beta;
    int best = 0;
    double best_val = -1.0;
    for (int j = 0; j < 10; ++j) {
      const double v = std::abs(d.x.col(j).dot(r));
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    CHECK(select_variable(d, beta) == best);
  }
}

TEST_CASE("rho = 1 reproduces forward stepwise exactly") {
  for (std::uint64_t seed = 40; seed < 43; ++seed) {
    auto d = gaussian_design(60, 15, seed, 1.0, 5, 2.0);
    AfsConfig config;
    config.rho = 1.0;
    config.max_steps = 12;
    config.l1_cap = std::numeric_limits<double>::infinity();
    const AfsPath path = afs_fit(d, config);
    const auto fs = oracle::forward_stepwise(d, static_cast<int>(path.steps.size()));
    REQUIRE(path.steps.size() <= fs.size());
    for (size_t m = 0; m < path.steps.size(); ++m) {
      CHECK((path.steps[m].beta - fs[m]).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("orthogonal design follows the geometric closed form") {
  auto x = testutil::orthonormal_centered(100, 5, 44);
  Eigen::VectorXd beta_true(5);
  beta_true << 3, -2, 1.5, 0.5, 0.1;
  Eigen::VectorXd y = x * beta_true + 0.05 * testutil::random_vector(100, 45);
  StandardizedDesign d = standardize(x, y, true);
  const Eigen::VectorXd ols = d.x.transpose() * d.y;

  for (double rho : {0.5, 0.15}) {
    AfsConfig config;
    config.rho = rho;
    config.max_steps = 40;
    config.l1_cap = std::numeric_limits<double>::infinity();
    const AfsPath path = afs_fit(d, config);
    const auto k_of = entry_steps(path);
    for (const auto& step : path.steps) {
      for (int j = 0; j < 5; ++j) {
        const auto it = k_of.find(j);
        const double expect =
            it == k_of.end() || step.m < it->second
                ? 0.0
                : oracle::ortho_afs_coef(ols[j], rho, step.m, it->second);
        CHECK(step.beta[j] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("shrink factor is 0.75 at rho = 0.5, entry 1, step 2") {
  CHECK(oracle::ortho_afs_coef(1.0, 0.5, 2, 1) == doctest::Approx(0.75));
}

TEST_CASE("zero response stops immediately with an exact fit") {
  auto x = testutil::random_matrix(20, 3, 46);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(20);
  auto d = standardize(x, y, true);
  const AfsPath path = afs_fit(d, AfsConfig{});
  CHECK(path.steps.empty());
  CHECK(path.stop_reason == StopReason::kExactFit);
}

TEST_CASE("path invariants: nested active sets, monotone rss, cap respected") {
  auto d = gaussian_design(80, 12, 47, 1.5, 4, 1.0);
  AfsConfig config;
  config.rho = 0.3;
  config.max_steps = 60;
  const AfsPath path = afs_fit(d, config);
  REQUIRE(!path.steps.empty());

  double prev_rss = d.y.squaredNorm();
  size_t prev_size = 0;
  for (size_t i = 0; i < path.steps.size(); ++i) {
    const auto& s = path.steps[i];
    CHECK(s.rss <= prev_rss + 1e-12);
    prev_rss = s.rss;
    CHECK(s.active.size() - prev_size <= 1);
    prev_size = s.active.size();
    if (i + 1 < path.steps.size()) {
      CHECK(s.l1 < path.l1_cap_used);
    }
  }
  // nested: prefixes agree
  for (size_t i = 1; i < path.steps.size(); ++i) {
    const auto& a = path.steps[i - 1].active;
    const auto& b = path.steps[i].active;
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST_CASE("rss differences contract by (1-rho)^2 once all variables entered") {
  auto x = testutil::orthonormal_centered(100, 6, 48);
  Eigen::VectorXd beta_true(6);
  beta_true << 2, -1.5, 1, 0.7, 0.4, 0.2;
  Eigen::VectorXd y = x * beta_true + 0.1 * testutil::random_vector(100, 49);
  auto d = standardize(x, y, true);

  const double rho = 0.1;
  AfsConfig config;
  config.rho = rho;
  config.max_steps = 120;
  config.l1_cap = std::numeric_limits<double>::infinity();
  const AfsPath path = afs_fit(d, config);

  int full_at = -1;
  for (const auto& s : path.steps) {
    if (s.active.size() == 6) {
      full_at = s.m;
      break;
    }
  }
  REQUIRE(full_at > 0);
  const double factor = (1.0 - rho) * (1.0 - rho);
  for (int m = full_at + 1; m + 1 < static_cast<int>(path.steps.size()); ++m) {
    const double d1 = path.steps[m].rss - path.steps[m - 1].rss;
    const double d2 = path.steps[m + 1].rss - path.steps[m].rss;
    CHECK(d1 / d2 == doctest::Approx(factor).epsilon(1e-8));
  }
}

TEST_CASE("re-selection leaves the active set unchanged") {
  auto d = gaussian_design(50, 6, 50, 0.5, 2, 3.0);
  AfsConfig config;
  config.rho = 0.05;
  config.max_steps = 30;
  config.l1_cap = std::numeric_limits<double>::infinity();
  const AfsPath path = afs_fit(d, config);
  bool saw_reselection = false;
  for (size_t i = 1; i < path.steps.size(); ++i) {
    if (!path.steps[i].entered) {
      saw_reselection = true;
      CHECK(path.steps[i].active == path.steps[i - 1].active);
    }
  }
  CHECK(saw_reselection);  // small rho re-selects before entering new vars
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(
      [] {
        AfsConfig c;
        c.rho = 0.0;
        c.validate();
      }(),
      InvalidConfig);
  CHECK_THROWS_AS(
      [] {
        AfsConfig c;
        c.rho = 1.5;
        c.validate();
      }(),
      InvalidConfig);
  CHECK_THROWS_AS(
      [] {
        AfsConfig c;
        c.max_steps = 0;
        c.validate();
      }(),
      InvalidConfig);
}
