#include <doctest.h>

#include "afs/errors.hpp"
#include "afs/standardize.hpp"
#include "test_util.hpp"

using namespace afs;

TEST_CASE("two-point column centers exactly") {
  Eigen::MatrixXd x(2, 1);
  x << 1, 3;
  Eigen::VectorXd y(2);
  y << 0, 2;

  auto d = standardize(x, y, /*unit_norm=*/false);
  CHECK(d.x(0, 0) == doctest::Approx(-1.0));
  CHECK(d.x(1, 0) == doctest::Approx(1.0));
  CHECK(d.y[0] == doctest::Approx(-1.0));
  CHECK(d.y[1] == doctest::Approx(1.0));
  CHECK(d.col_scales[0] == 1.0);

  auto du = standardize(x, y, /*unit_norm=*/true);
  CHECK(du.x(0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(du.x(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("constant column is rejected") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 5, 2, 5, 3, 5;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(standardize(x, y), ConstantColumn);
  try {
    standardize(x, y);
  } catch (const ConstantColumn& e) {
    CHECK(e.column == 1);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  Eigen::MatrixXd x = testutil::random_matrix(5, 2, 1);
  Eigen::VectorXd y = testutil::random_vector(4, 2);
  CHECK_THROWS_AS(standardize(x, y), DimensionMismatch);
}

TEST_CASE("columns centered to 1e-10 and unit norm when standardized") {
  auto x = testutil::random_matrix(40, 6, 3);
  auto y = testutil::random_vector(40, 4);
  auto d = standardize(x, y, true);
  for (int j = 0; j < d.p(); ++j) {
    CHECK(std::abs(d.x.col(j).sum()) < 1e-10);
    CHECK(d.x.col(j).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.col_scales[j] > 0.0);
  }
  CHECK(std::abs(d.y.sum()) < 1e-8);
}

TEST_CASE("standardize is idempotent") {
  auto x = testutil::random_matrix(30, 4, 5);
  auto y = testutil::random_vector(30, 6);
  auto once = standardize(x, y, true);
  auto twice = standardize(once.x, once.y, true);
  CHECK((once.x - twice.x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((once.y - twice.y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("back-transform reproduces raw-scale OLS predictions") {
  auto x = testutil::random_matrix(25, 3, 7);
  auto y = testutil::random_vector(25, 8);
  auto d = standardize(x, y, true);
  // model-scale fit then back-transform must equal raw predictions
  Eigen::VectorXd beta_std = d.x.colPivHouseholderQr().solve(d.y);
  Eigen::VectorXd pred = d.predict(x, beta_std);

  Eigen::MatrixXd x1(25, 4);
  x1.col(0).setOnes();
  x1.rightCols(3) = x;
  Eigen::VectorXd coef = x1.colPivHouseholderQr().solve(y);
  Eigen::VectorXd pred_raw = x1 * coef;
  CHECK((pred - pred_raw).cwiseAbs().maxCoeff() < 1e-8);
}
