#include "musa/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "musa/symmetric_eigen.hpp"

namespace musa {

namespace {

constexpr double kMadConsistency = 1.4826;

double median_inplace(std::vector<double>& v) {
  const size_t n = v.size();
  const size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (n % 2 == 1) return upper;
  std::nth_element(v.begin(), v.begin() + (mid - 1), v.begin() + mid);
  return 0.5 * (v[mid - 1] + upper);
}

Matrix clip_to_psd(const Matrix& m) {
  const EigenDecomposition eig = symmetric_eigendecomposition(m);
  Vector clipped = eig.eigenvalues.cwiseMax(0.0);
  Matrix out = eig.eigenvectors * clipped.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

double median(std::span<const double> values) {
  if (values.empty()) throw PreconditionError("median of empty range");
  std::vector<double> scratch(values.begin(), values.end());
  return median_inplace(scratch);
}

double mad_scale(std::span<const double> values) {
  const double center = median(values);
  std::vector<double> deviations(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    deviations[i] = std::abs(values[i] - center);
  return kMadConsistency * median_inplace(deviations);
}

CovarianceEstimate classical_covariance(const SensorWindow& w) {
  w.validate();
  const Index n = w.rows();

  CovarianceEstimate est;
  est.estimator = CovarianceEstimator::CLASSICAL;
  est.location = w.values.colwise().mean();
  Matrix centered = w.values.rowwise() - est.location.transpose();
  est.matrix = (centered.transpose() * centered) / static_cast<double>(n - 1);
  est.matrix = 0.5 * (est.matrix + est.matrix.transpose());
  return est;
}

CovarianceEstimate robust_covariance(const SensorWindow& w) {
  w.validate();
  const Index n = w.rows();
  const Index p = w.cols();
  if (n < 4)
    throw PreconditionError("robust covariance needs at least 4 observations, got " +
                            std::to_string(n));

  CovarianceEstimate est;
  est.estimator = CovarianceEstimator::ROBUST_PAIRWISE;
  est.location.resize(p);
  Vector scales(p);
  std::vector<double> column(static_cast<size_t>(n));
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) column[static_cast<size_t>(i)] = w.values(i, j);
    est.location[j] = median(column);
    scales[j] = mad_scale(column);
    if (scales[j] == 0.0)
      throw DegenerateScaleError("column " + std::to_string(j) +
                                 " has zero median absolute deviation");
  }

  Matrix raw(p, p);
  std::vector<double> sum(static_cast<size_t>(n)), diff(static_cast<size_t>(n));
  for (Index j = 0; j < p; ++j) raw(j, j) = scales[j] * scales[j];
  for (Index j = 0; j < p; ++j) {
    for (Index k = j + 1; k < p; ++k) {
      for (Index i = 0; i < n; ++i) {
        sum[static_cast<size_t>(i)] = w.values(i, j) + w.values(i, k);
        diff[static_cast<size_t>(i)] = w.values(i, j) - w.values(i, k);
      }
      const double s_sum = mad_scale(sum);
      const double s_diff = mad_scale(diff);
      const double cov = 0.25 * (s_sum * s_sum - s_diff * s_diff);
      raw(j, k) = cov;
      raw(k, j) = cov;
    }
  }

  est.matrix = clip_to_psd(raw);
  return est;
}

}  // namespace musa
