#include "musa/components.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "musa/symmetric_eigen.hpp"

namespace musa {

namespace {

constexpr double kIcaTolerance = 1e-6;
constexpr int kIcaMaxIterations = 200;

Vector sample_std(const Matrix& centered) {
  const Index n = centered.rows();
  return (centered.colwise().squaredNorm() / static_cast<double>(n - 1))
      .cwiseSqrt()
      .transpose();
}

// W <- (W W^T)^{-1/2} W, so the rows become orthonormal.
Matrix symmetric_orthogonalize(const Matrix& w) {
  const EigenDecomposition eig = symmetric_eigendecomposition(w * w.transpose());
  Vector inv_roots(eig.eigenvalues.size());
  for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
    const double lambda = eig.eigenvalues[j];
    if (lambda <= 0.0)
      throw NumericError("rank-deficient unmixing matrix during orthogonalization");
    inv_roots[j] = 1.0 / std::sqrt(lambda);
  }
  return eig.eigenvectors * inv_roots.asDiagonal() * eig.eigenvectors.transpose() * w;
}

// Largest-magnitude entry of each column positive (ties: lowest index).
void fix_component_signs(Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < m.rows(); ++i) {
      const double mag = std::abs(m(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (m(pivot, j) < 0.0) m.col(j) = -m.col(j);
  }
}

ComponentModel principal_components(const SensorWindow& w,
                                    const CovarianceEstimate& cov,
                                    bool standardize, Technique technique) {
  ComponentModel model;
  model.technique = technique;
  model.center = cov.location;

  Matrix centered = w.values.rowwise() - model.center.transpose();
  Matrix working;
  if (standardize) {
    const Vector sd = sample_std(w.values.rowwise() -
                                 w.values.colwise().mean());
    for (Index j = 0; j < sd.size(); ++j)
      if (sd[j] == 0.0)
        throw DegenerateScaleError("column " + std::to_string(j) +
                                   " has zero variance, cannot standardize");
    centered = centered.array().rowwise() / sd.transpose().array();
    working = (centered.transpose() * centered) /
              static_cast<double>(w.rows() - 1);
    working = 0.5 * (working + working.transpose());
  } else {
    working = cov.matrix;
  }

  const EigenDecomposition eig = symmetric_eigendecomposition(working);
  model.loadings = eig.eigenvectors;
  model.explained_variance = eig.eigenvalues;
  model.scores = centered * model.loadings;
  return model;
}

}  // namespace

ComponentModel pca_transform(const SensorWindow& w, bool standardize) {
  return principal_components(w, classical_covariance(w), standardize,
                              Technique::PCA);
}

ComponentModel robust_pca_transform(const SensorWindow& w) {
  return principal_components(w, robust_covariance(w), false,
                              Technique::ROBUST_PCA);
}

WhitenedData whiten(const SensorWindow& w) {
  const ComponentModel pca = pca_transform(w, false);
  const Index p = w.cols();

  Vector inv_roots(p);
  const double lambda_max = pca.explained_variance[0];
  for (Index j = 0; j < p; ++j) {
    const double lambda = pca.explained_variance[j];
    if (lambda <= 1e-12 * std::max(1.0, lambda_max))
      throw DegenerateScaleError("component " + std::to_string(j) +
                                 " has (near-)zero variance, cannot whiten");
    inv_roots[j] = 1.0 / std::sqrt(lambda);
  }

  WhitenedData out;
  out.center = pca.center;
  out.eigenvalues = pca.explained_variance;
  out.basis = pca.loadings * inv_roots.asDiagonal();
  out.z = pca.scores * inv_roots.asDiagonal();
  return out;
}

ComponentModel ica_transform(const SensorWindow& w, uint64_t seed) {
  w.validate();
  const Index n = w.rows();
  const Index p = w.cols();
  if (n < 10 * p)
    throw PreconditionError("ICA needs n >= 10 p for stable estimation (n = " +
                            std::to_string(n) + ", p = " + std::to_string(p) + ")");

  ComponentModel model;
  model.technique = Technique::ICA;

  if (p == 1) {
    // Nothing to unmix; hand back the centered input.
    model.center = w.values.colwise().mean();
    model.scores = w.values.rowwise() - model.center.transpose();
    model.loadings = Matrix::Identity(1, 1);
    model.explained_variance.resize(1);
    model.explained_variance[0] =
        model.scores.col(0).squaredNorm() / static_cast<double>(n - 1);
    return model;
  }

  const WhitenedData white = whiten(w);
  const Matrix& z = white.z;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix unmixing(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) unmixing(i, j) = gauss(rng);
  unmixing = symmetric_orthogonalize(unmixing);

  double delta = 0.0;
  bool converged = false;
  for (int iter = 0; iter < kIcaMaxIterations; ++iter) {
    const Matrix projections = z * unmixing.transpose();  // n x p
    const Matrix g = projections.array().tanh();
    const Vector g_prime_mean =
        (1.0 - g.array().square()).colwise().mean().transpose();

    Matrix updated = (g.transpose() * z) / static_cast<double>(n) -
                     g_prime_mean.asDiagonal() * unmixing;
    updated = symmetric_orthogonalize(updated);

    delta = ((updated * unmixing.transpose()).diagonal().cwiseAbs().array() - 1.0)
                .abs()
                .maxCoeff();
    unmixing = updated;
    if (delta < kIcaTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("FastICA did not converge in " +
                               std::to_string(kIcaMaxIterations) +
                               " iterations (last delta " +
                               std::to_string(delta) + ")",
                           delta);

  // Mixing pattern of each component in the original variable space; its
  // squared norm times the source variance is the variance that component
  // back-projects onto the data. With basis = E D^{-1/2} the mixing rows are
  // W D^{1/2} E^T = W D basis^T.
  const Matrix sources = z * unmixing.transpose();
  const Matrix mixing_rows =
      unmixing * white.eigenvalues.asDiagonal() * white.basis.transpose();

  Vector source_var(p);
  const Vector source_mean = sources.colwise().mean();
  for (Index k = 0; k < p; ++k)
    source_var[k] = (sources.col(k).array() - source_mean[k]).square().sum() /
                    static_cast<double>(n - 1);

  Vector back_projection_var(p);
  for (Index k = 0; k < p; ++k)
    back_projection_var[k] = source_var[k] * mixing_rows.row(k).squaredNorm();

  std::vector<Index> order(static_cast<size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return back_projection_var[a] > back_projection_var[b];
  });

  Matrix ordered_unmixing(p, p);
  for (Index k = 0; k < p; ++k)
    ordered_unmixing.row(k) = unmixing.row(order[static_cast<size_t>(k)]);

  model.center = white.center;
  model.loadings = white.basis * ordered_unmixing.transpose();
  fix_component_signs(model.loadings);
  model.scores = (w.values.rowwise() - model.center.transpose()) * model.loadings;
  model.explained_variance.resize(p);
  for (Index k = 0; k < p; ++k)
    model.explained_variance[k] = back_projection_var[order[static_cast<size_t>(k)]];
  return model;
}

double amari_index(const Matrix& gain) {
  if (gain.rows() != gain.cols() || gain.rows() < 2)
    throw PreconditionError("amari index needs a square matrix of size >= 2");
  const Index p = gain.rows();
  const Matrix g = gain.cwiseAbs();

  double total = 0.0;
  for (Index i = 0; i < p; ++i) {
    const double row_max = g.row(i).maxCoeff();
    if (row_max == 0.0) return 1.0;
    total += g.row(i).sum() / row_max - 1.0;
  }
  for (Index j = 0; j < p; ++j) {
    const double col_max = g.col(j).maxCoeff();
    if (col_max == 0.0) return 1.0;
    total += g.col(j).sum() / col_max - 1.0;
  }
  return total / (2.0 * static_cast<double>(p) * static_cast<double>(p - 1));
}

}  // namespace musa
