#include <doctest.h>

#include <cmath>
#include <random>

#include "musa/symmetric_eigen.hpp"
#include "test_util.hpp"

using namespace musa;

TEST_CASE("hand-worked 2x2 eigendecomposition") {
  Matrix m(2, 2);
  m << 10.0 / 3.0, 8.0 / 3.0, 8.0 / 3.0, 10.0 / 3.0;
  const EigenDecomposition eig = symmetric_eigendecomposition(m);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(eig.eigenvalues[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(eig.eigenvectors(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  CHECK(eig.eigenvectors(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  // tie on magnitudes: lowest index goes positive
  CHECK(eig.eigenvectors(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  CHECK(eig.eigenvectors(1, 1) == doctest::Approx(-inv_sqrt2).epsilon(1e-10));
}

TEST_CASE("identity and diagonal matrices") {
  const EigenDecomposition id = symmetric_eigendecomposition(Matrix::Identity(3, 3));
  CHECK(id.eigenvalues.isApproxToConstant(1.0, 1e-14));
  CHECK(id.eigenvectors.isApprox(Matrix::Identity(3, 3), 1e-14));

  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 5.0, 2.0, 1.0;
  const EigenDecomposition eig = symmetric_eigendecomposition(d);
  CHECK(eig.eigenvalues[0] == doctest::Approx(5.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0));
  CHECK(eig.eigenvectors.isApprox(Matrix::Identity(3, 3), 1e-14));
}

TEST_CASE("1x1 and zero matrices") {
  Matrix one(1, 1);
  one << -4.5;
  const EigenDecomposition eig = symmetric_eigendecomposition(one);
  CHECK(eig.eigenvalues[0] == -4.5);
  CHECK(eig.eigenvectors(0, 0) == 1.0);

  const EigenDecomposition zero = symmetric_eigendecomposition(Matrix::Zero(4, 4));
  CHECK(zero.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-symmetric input is rejected") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(symmetric_eigendecomposition(m), PreconditionError);
  CHECK_THROWS_AS(symmetric_eigendecomposition(Matrix::Zero(2, 3)),
                  PreconditionError);
}

TEST_CASE("random symmetric matrices: reconstruction, orthonormality, order") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index p = dim(rng);
    const Matrix m = testutil::random_symmetric(p, rng, trial % 7 ? 1.0 : 1e3);
    const EigenDecomposition eig = symmetric_eigendecomposition(m);

    const Matrix rebuilt = eig.eigenvectors * eig.eigenvalues.asDiagonal() *
                           eig.eigenvectors.transpose();
    const double norm = std::max(m.norm(), 1e-30);
    CHECK((rebuilt - m).norm() <= 1e-8 * norm);
    CHECK((eig.eigenvectors.transpose() * eig.eigenvectors -
           Matrix::Identity(p, p))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    for (Index j = 0; j + 1 < p; ++j)
      CHECK(eig.eigenvalues[j] >= eig.eigenvalues[j + 1]);
    for (Index j = 0; j < p; ++j) {
      // eigen equation within 1e-8 * ||m||
      const Vector residual =
          m * eig.eigenvectors.col(j) - eig.eigenvalues[j] * eig.eigenvectors.col(j);
      CHECK(residual.norm() <= 1e-8 * norm);
      // sign convention
      Index pivot = 0;
      eig.eigenvectors.col(j).cwiseAbs().maxCoeff(&pivot);
      CHECK(eig.eigenvectors(pivot, j) >= 0.0);
    }
  }
}

TEST_CASE("symmetric square root") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = testutil::random_symmetric(4, rng);
    const Matrix psd = a * a.transpose() + 1e-3 * Matrix::Identity(4, 4);
    const Matrix root = symmetric_sqrt(psd);
    CHECK((root * root - psd).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, psd.norm()));
  }

  Matrix negative(2, 2);
  negative << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(symmetric_sqrt(negative), NumericError);
}
