#pragma once

#include <cstdint>

#include "musa/covariance.hpp"
#include "musa/sensor_window.hpp"
#include "musa/types.hpp"

namespace musa {

// Output of a component transform. `scores` holds the transformed rows
// (same n as the input); `loadings` maps centered (and, where applicable,
// rescaled) observations to scores: scores = prepared(values - center) * loadings.
struct ComponentModel {
  Matrix scores;             // n x p
  Matrix loadings;           // p x p, one column per component
  Vector center;             // length p
  Vector explained_variance; // length p, nonincreasing
  Technique technique = Technique::PCA;
};

// Principal components from the classical covariance (or correlation matrix
// when standardize is set). A zero-variance column with standardize=true
// raises DegenerateScaleError.
ComponentModel pca_transform(const SensorWindow& w, bool standardize = false);

// Principal components from the pairwise robust covariance, centered at the
// column medians. Errors propagate from robust_covariance.
ComponentModel robust_pca_transform(const SensorWindow& w);

struct WhitenedData {
  Matrix z;       // n x p, identity sample covariance
  Matrix basis;   // p x p, z = (values - center) * basis
  Vector center;  // length p
  Vector eigenvalues;
};

// PCA whitening used as the first ICA stage. Exposed so the whitened
// intermediate can be inspected directly.
WhitenedData whiten(const SensorWindow& w);

// FastICA with the tanh contrast and symmetric decorrelation: whiten, then
// fixed-point iterate until the unmixing update stabilizes (max | |diag(W_k
// W_{k-1}^T)| - 1 | < 1e-6, at most 200 iterations). Components are reordered
// by the variance their back-projection explains, descending, so the first
// component is well defined. Requires n >= 10 p; p = 1 degenerates to plain
// centering. The seed drives the random initial unmixing matrix.
ComponentModel ica_transform(const SensorWindow& w, uint64_t seed = 0);

// Normalized Amari separation index of a gain matrix: 0 iff the matrix is a
// scaled permutation, at most 1.
double amari_index(const Matrix& gain);

}  // namespace musa
