#include <doctest.h>

#include "afs/errors.hpp"
#include "afs/gram.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace afs;

TEST_CASE("single orthonormal column gives a 1x1 identity gram") {
  auto x = testutil::orthonormal_centered(10, 2, 11);
  auto d = standardize(x, testutil::random_vector(10, 12), true);
  GramState state;
  state.extend(d, 0);
  CHECK(state.gram_inv()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("collinear duplicate column raises SingularGram") {
  Eigen::MatrixXd x(20, 2);
  x.col(0) = testutil::random_vector(20, 13);
  x.col(1) = 2.0 * x.col(0);
  auto d = standardize(x, testutil::random_vector(20, 14), true);
  GramState state;
  state.extend(d, 0);
  CHECK_THROWS_AS(state.extend(d, 1), SingularGram);
}

TEST_CASE("sequential extension matches the dense inverse") {
  auto x = testutil::random_matrix(20, 5, 15);
  auto d = standardize(x, testutil::random_vector(20, 16), true);
  GramState state;
  for (int j = 0; j < 4; ++j) state.extend(d, j);

  Eigen::MatrixXd xa = d.x.leftCols(4);
  Eigen::MatrixXd direct = (xa.transpose() * xa).inverse();
  CHECK((state.gram_inv() - direct).cwiseAbs().maxCoeff() < 1e-8);

  // invariant: gram_inv * gram = I
  Eigen::MatrixXd prod = state.gram_inv() * (xa.transpose() * xa);
  CHECK((prod - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("active_ols matches dense least squares") {
  auto x = testutil::random_matrix(30, 4, 17);
  auto d = standardize(x, testutil::random_vector(30, 18), true);
  GramState state;
  for (int j = 0; j < 4; ++j) state.extend(d, j);
  Eigen::VectorXd direct = oracle::dense_ols(d.x, d.y);
  CHECK((state.ols() - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("active_ols on orthogonal design decouples coordinates") {
  auto x = testutil::orthonormal_centered(25, 3, 19);
  auto d = standardize(x, testutil::random_vector(25, 20), true);
  GramState state;
  state.extend(d, 1);
  state.extend(d, 2);
  const Eigen::VectorXd nu = state.ols();
  CHECK(nu[0] == doctest::Approx(d.x.col(1).dot(d.y)).epsilon(1e-10));
  CHECK(nu[1] == doctest::Approx(d.x.col(2).dot(d.y)).epsilon(1e-10));
}

TEST_CASE("single active column projection") {
  auto x = testutil::orthonormal_centered(12, 1, 21);
  Eigen::VectorXd y = 2.0 * x.col(0);
  StandardizedDesign d;
  d.x = x;
  d.y = y;
  d.col_means = Eigen::VectorXd::Zero(1);
  d.col_scales = Eigen::VectorXd::Ones(1);
  GramState state;
  state.extend(d, 0);
  CHECK(state.ols()[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("empty active set cannot be solved") {
  GramState state;
  CHECK_THROWS_AS(state.ols(), EmptyActiveSet);
}

TEST_CASE("incremental equals batch for random extension orders") {
  auto x = testutil::random_matrix(26, 8, 22);
  auto d = standardize(x, testutil::random_vector(26, 23), true);
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<int> order{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(order.begin(), order.end(), rng);
    const int k = 1 + static_cast<int>(rng() % 7);
    GramState inc;
    for (int i = 0; i < k; ++i) inc.extend(d, order[i]);

    GramState batch;
    for (int i = 0; i < k; ++i) batch.extend(d, order[i]);
    CHECK((inc.gram_inv() - batch.gram_inv()).cwiseAbs().maxCoeff() < 1e-8);

    Eigen::MatrixXd xa(26, k);
    for (int i = 0; i < k; ++i) xa.col(i) = d.x.col(order[i]);
    Eigen::MatrixXd direct = (xa.transpose() * xa).inverse();
    CHECK((inc.gram_inv() - direct).cwiseAbs().maxCoeff() < 1e-8);
  }
}
