#include <doctest.h>

#include <cmath>
#include <random>

#include "musa/components.hpp"
#include "test_util.hpp"

using namespace musa;

namespace {

double angle_deg(const Vector& u, const Vector& v) {
  const double cosine =
      std::abs(u.dot(v)) / (u.norm() * v.norm());
  return std::acos(std::min(1.0, cosine)) * 180.0 / std::acos(-1.0);
}

// data concentrated along (1,1)/sqrt(2), optionally contaminated with
// orthogonal outliers
SensorWindow ridge_sample(Index n, uint64_t seed, Index outliers = 0,
                          double outlier_amplitude = 20.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> main_axis(0.0, 3.0);
  std::normal_distribution<double> off_axis(0.0, 0.3);
  const double s = 1.0 / std::sqrt(2.0);
  SensorWindow w;
  w.values.resize(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double t = main_axis(rng);
    const double u = off_axis(rng);
    w.values(i, 0) = t * s + u * s;
    w.values(i, 1) = t * s - u * s;
  }
  for (Index i = 0; i < outliers; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    w.values(i, 0) = sign * outlier_amplitude * s;
    w.values(i, 1) = -sign * outlier_amplitude * s;
  }
  return w;
}

}  // namespace

TEST_CASE("pca matches the hand-worked 2x2 oracle") {
  SensorWindow w;
  w.values.resize(4, 2);
  w.values << 2, 1, -2, -1, 1, 2, -1, -2;
  const ComponentModel model = pca_transform(w);

  const double r = 3.0 / std::sqrt(2.0);
  CHECK(model.scores(0, 0) == doctest::Approx(r).epsilon(1e-8));
  CHECK(model.scores(1, 0) == doctest::Approx(-r).epsilon(1e-8));
  CHECK(model.scores(2, 0) == doctest::Approx(r).epsilon(1e-8));
  CHECK(model.scores(3, 0) == doctest::Approx(-r).epsilon(1e-8));
  CHECK(model.explained_variance[0] == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(model.explained_variance[1] ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(model.technique == Technique::PCA);
}

TEST_CASE("axis-aligned data yields identity-permutation loadings") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> narrow(0.0, 0.5);
  std::normal_distribution<double> wide(0.0, 4.0);
  SensorWindow w;
  w.values.resize(300, 2);
  for (Index i = 0; i < 300; ++i) {
    w.values(i, 0) = narrow(rng);
    w.values(i, 1) = wide(rng);
  }
  const ComponentModel model = pca_transform(w);
  // first component hugs the wide axis; sign convention makes entries +1
  CHECK(std::abs(model.loadings(1, 0)) > 0.999);
  CHECK(std::abs(model.loadings(0, 1)) > 0.999);
  CHECK(model.loadings(1, 0) > 0.0);
  CHECK(model.loadings(0, 1) > 0.0);
}

TEST_CASE("pca invariants over random windows") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<Index> nn(6, 60);
  std::uniform_int_distribution<Index> pp(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = nn(rng);
    const Index p = std::min(pp(rng), n - 1);
    const SensorWindow w = testutil::random_window(n, p, rng);
    const ComponentModel model = pca_transform(w);

    CHECK((model.loadings.transpose() * model.loadings - Matrix::Identity(p, p))
              .cwiseAbs()
              .maxCoeff() < 1e-8);

    // scores reconstruct the window
    const Matrix rebuilt =
        (model.scores * model.loadings.transpose()).rowwise() +
        model.center.transpose();
    CHECK((rebuilt - w.values).cwiseAbs().maxCoeff() < 1e-8);

    // explained variance: descending, matches score variance, sums to trace
    const CovarianceEstimate cov = classical_covariance(w);
    CHECK(model.explained_variance.sum() ==
          doctest::Approx(cov.matrix.trace()).epsilon(1e-6));
    for (Index j = 0; j < p; ++j) {
      if (j + 1 < p)
        CHECK(model.explained_variance[j] >= model.explained_variance[j + 1]);
      const double var =
          (model.scores.col(j).array() - model.scores.col(j).mean())
              .square()
              .sum() /
          static_cast<double>(n - 1);
      if (model.explained_variance[j] > 1e-12)
        CHECK(var == doctest::Approx(model.explained_variance[j]).epsilon(1e-6));
    }

    // pairwise decorrelation
    for (Index a = 0; a < p; ++a)
      for (Index b = a + 1; b < p; ++b) {
        const double va = model.explained_variance[a];
        const double vb = model.explained_variance[b];
        if (va < 1e-10 || vb < 1e-10) continue;
        const double cov_ab =
            ((model.scores.col(a).array() - model.scores.col(a).mean()) *
             (model.scores.col(b).array() - model.scores.col(b).mean()))
                .sum() /
            static_cast<double>(n - 1);
        CHECK(std::abs(cov_ab / std::sqrt(va * vb)) < 1e-8);
      }
  }
}

TEST_CASE("standardized pca") {
  SensorWindow w;
  w.values.resize(4, 2);
  w.values << 1, 7, 2, 7, 3, 7, 4, 7;
  CHECK_THROWS_AS(pca_transform(w, true), DegenerateScaleError);

  std::mt19937_64 rng(23);
  const SensorWindow random = testutil::random_window(50, 3, rng);
  const ComponentModel model = pca_transform(random, true);
  // correlation matrix has trace p
  CHECK(model.explained_variance.sum() == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("robust pca agrees with classical pca on clean data") {
  const SensorWindow w = ridge_sample(400, 91);
  const ComponentModel classical = pca_transform(w);
  const ComponentModel robust = robust_pca_transform(w);
  CHECK(angle_deg(classical.loadings.col(0), robust.loadings.col(0)) < 10.0);
  CHECK(robust.technique == Technique::ROBUST_PCA);
}

TEST_CASE("robust pca resists orthogonal outliers") {
  const SensorWindow clean = ridge_sample(400, 91);
  const SensorWindow dirty = ridge_sample(400, 91, 40);
  const Vector truth = pca_transform(clean).loadings.col(0);

  const ComponentModel classical = pca_transform(dirty);
  const ComponentModel robust = robust_pca_transform(dirty);
  const double classical_angle = angle_deg(truth, classical.loadings.col(0));
  const double robust_angle = angle_deg(truth, robust.loadings.col(0));
  CHECK(robust_angle < 15.0);
  CHECK(classical_angle > robust_angle);
  CHECK(classical_angle > 30.0);
}

TEST_CASE("robust pca on axis-aligned data") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> narrow(0.0, 0.5);
  std::normal_distribution<double> wide(0.0, 4.0);
  SensorWindow w;
  w.values.resize(500, 2);
  for (Index i = 0; i < 500; ++i) {
    w.values(i, 0) = wide(rng);
    w.values(i, 1) = narrow(rng);
  }
  const ComponentModel model = robust_pca_transform(w);
  CHECK(std::abs(model.loadings(0, 0)) > 0.99);
  CHECK(std::abs(model.loadings(1, 1)) > 0.99);
}

TEST_CASE("ica separates two uniform sources") {
  std::mt19937_64 rng(101);
  const double half_width = std::sqrt(3.0);
  std::uniform_real_distribution<double> uniform(-half_width, half_width);
  const Index n = 2000;
  Matrix sources(n, 2);
  for (Index i = 0; i < n; ++i) {
    sources(i, 0) = uniform(rng);
    sources(i, 1) = uniform(rng);
  }
  Matrix mixing(2, 2);
  mixing << 2.0, 1.0, 1.0, 1.5;

  SensorWindow w;
  w.values = sources * mixing.transpose();
  const ComponentModel model = ica_transform(w, 0);

  const Matrix gain = mixing.transpose() * model.loadings;
  CHECK(amari_index(gain) < 0.05);
  CHECK(model.scores.rows() == n);
}

TEST_CASE("ica single-variable shortcut") {
  std::mt19937_64 rng(5);
  const SensorWindow w = testutil::random_window(50, 1, rng);
  const ComponentModel model = ica_transform(w);
  const double mean = w.values.col(0).mean();
  CHECK((model.scores.col(0).array() - (w.values.col(0).array() - mean))
            .abs()
            .maxCoeff() == 0.0);
  CHECK(model.loadings(0, 0) == 1.0);
}

TEST_CASE("ica sample-size precondition") {
  std::mt19937_64 rng(6);
  const SensorWindow w = testutil::random_window(25, 3, rng);
  CHECK_THROWS_AS(ica_transform(w), PreconditionError);
}

TEST_CASE("gaussian isotropic data: whitening is sane, ica may refuse") {
  std::mt19937_64 rng(77);
  const SensorWindow w = testutil::random_window(600, 2, rng);

  const WhitenedData white = whiten(w);
  const Matrix centered = white.z.rowwise() - white.z.colwise().mean();
  const Matrix cov = centered.transpose() * centered /
                     static_cast<double>(w.rows() - 1);
  CHECK((cov - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6);

  try {
    const ComponentModel model = ica_transform(w, 1);
    CHECK(model.scores.allFinite());
    CHECK(model.scores.rows() == w.rows());
  } catch (const ConvergenceError& e) {
    CHECK(e.residual >= 0.0);  // rotation is unidentifiable, refusal is fine
  }
}

TEST_CASE("transforms are deterministic") {
  std::mt19937_64 rng(55);
  const SensorWindow w = testutil::random_window(120, 3, rng);
  const ComponentModel a = pca_transform(w);
  const ComponentModel b = pca_transform(w);
  CHECK(a.scores == b.scores);
  CHECK(a.loadings == b.loadings);

  const ComponentModel ra = robust_pca_transform(w);
  const ComponentModel rb = robust_pca_transform(w);
  CHECK(ra.scores == rb.scores);

  // identifiable (sub-gaussian) data for the ICA pass
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  SensorWindow mixed;
  mixed.values.resize(200, 2);
  for (Index i = 0; i < 200; ++i) {
    const double s0 = uniform(rng);
    const double s1 = uniform(rng);
    mixed.values(i, 0) = 2.0 * s0 + s1;
    mixed.values(i, 1) = s0 + 1.5 * s1;
  }
  const ComponentModel ia = ica_transform(mixed, 9);
  const ComponentModel ib = ica_transform(mixed, 9);
  CHECK(ia.scores == ib.scores);
  CHECK(ia.explained_variance == ib.explained_variance);
}

TEST_CASE("amari index recognizes scaled permutations") {
  Matrix perm(3, 3);
  perm << 0, 2, 0, -5, 0, 0, 0, 0, 0.1;
  CHECK(amari_index(perm) == 0.0);

  Matrix dense(2, 2);
  dense << 1, 1, 1, 1;
  CHECK(amari_index(dense) == doctest::Approx(1.0));
}
