#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "musa/covariance.hpp"
#include "musa/symmetric_eigen.hpp"
#include "test_util.hpp"

using namespace musa;

namespace {

SensorWindow window_from_rows(const std::vector<std::vector<double>>& rows) {
  SensorWindow w;
  w.values.resize(static_cast<Index>(rows.size()),
                  static_cast<Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      w.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return w;
}

// Correlated bivariate Gaussian sample, optionally with a block of outliers.
SensorWindow bivariate_sample(Index n, double rho, uint64_t seed,
                              Index outliers = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SensorWindow w;
  w.values.resize(n, 2);
  const double rest = std::sqrt(1.0 - rho * rho);
  for (Index i = 0; i < n; ++i) {
    const double u = gauss(rng);
    const double v = gauss(rng);
    w.values(i, 0) = u;
    w.values(i, 1) = rho * u + rest * v;
  }
  for (Index i = 0; i < outliers; ++i) {
    w.values(i, 0) = 10.0;
    w.values(i, 1) = -10.0;
  }
  return w;
}

}  // namespace

TEST_CASE("classical covariance hand computation") {
  const SensorWindow w =
      window_from_rows({{2, 1}, {-2, -1}, {1, 2}, {-1, -2}});
  const CovarianceEstimate est = classical_covariance(w);
  CHECK(est.location.cwiseAbs().maxCoeff() == 0.0);
  CHECK(est.matrix(0, 0) == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(est.matrix(1, 1) == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(est.matrix(0, 1) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(est.matrix(1, 0) == est.matrix(0, 1));
}

TEST_CASE("classical covariance edge cases") {
  const SensorWindow constant =
      window_from_rows({{1, 7}, {2, 7}, {3, 7}});
  const CovarianceEstimate est = classical_covariance(constant);
  CHECK(est.matrix(1, 1) == 0.0);
  CHECK(est.matrix(0, 0) == doctest::Approx(1.0));  // {1,2,3} has variance 1

  SensorWindow single;
  single.values.resize(1, 2);
  single.values << 1.0, 2.0;
  CHECK_THROWS_AS(classical_covariance(single), PreconditionError);
}

TEST_CASE("robust covariance rejects degenerate scales and tiny samples") {
  // more than half the rows identical per column -> MAD 0
  const SensorWindow w = window_from_rows(
      {{1, 1}, {1, 1}, {1, 1}, {1, 1}, {2, 5}, {3, 6}, {4, 7}});
  CHECK_THROWS_AS(robust_covariance(w), DegenerateScaleError);

  const SensorWindow tiny = window_from_rows({{1, 2}, {3, 4}, {5, 6}});
  CHECK_THROWS_AS(robust_covariance(tiny), PreconditionError);
}

TEST_CASE("robust covariance tracks the classical estimate on clean data") {
  const SensorWindow w = bivariate_sample(500, 0.9, 42);
  const CovarianceEstimate robust = robust_covariance(w);
  const CovarianceEstimate classical = classical_covariance(w);
  CHECK((robust.matrix - classical.matrix).norm() < 0.3);
}

TEST_CASE("robust covariance resists 10% outliers") {
  const SensorWindow w = bivariate_sample(500, 0.9, 42, 50);
  const CovarianceEstimate robust = robust_covariance(w);
  const CovarianceEstimate classical = classical_covariance(w);
  CHECK(classical.matrix(0, 1) < 0.0);
  CHECK(robust.matrix(0, 1) > 0.0);
}

TEST_CASE("median and MAD ignore alterations above the median") {
  std::mt19937_64 rng(5);
  SensorWindow w = testutil::random_window(101, 3, rng);

  Vector medians_before(3);
  std::vector<double> col(101);
  for (Index j = 0; j < 3; ++j) {
    for (Index i = 0; i < 101; ++i) col[static_cast<size_t>(i)] = w.values(i, j);
    medians_before[j] = median(col);
  }

  // push the 10 largest entries of each column far out
  SensorWindow altered = w;
  for (Index j = 0; j < 3; ++j) {
    std::vector<Index> order(101);
    for (Index i = 0; i < 101; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return w.values(a, j) > w.values(b, j);
    });
    for (int k = 0; k < 10; ++k)
      altered.values(order[static_cast<size_t>(k)], j) += 1e6;
  }

  const CovarianceEstimate est = robust_covariance(altered);
  for (Index j = 0; j < 3; ++j) CHECK(est.location[j] == medians_before[j]);
}

TEST_CASE("robust covariance is symmetric PSD after clipping") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Index> nn(8, 40);
  std::uniform_int_distribution<Index> pp(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const SensorWindow w = testutil::random_window(nn(rng), pp(rng), rng);
    CovarianceEstimate est;
    try {
      est = robust_covariance(w);
    } catch (const DegenerateScaleError&) {
      continue;  // legitimately degenerate draw
    }
    CHECK((est.matrix - est.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    const EigenDecomposition eig = symmetric_eigendecomposition(est.matrix);
    CHECK(eig.eigenvalues.minCoeff() >= -1e-10);
  }
}
