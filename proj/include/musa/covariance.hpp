#pragma once

#include <span>

#include "musa/sensor_window.hpp"
#include "musa/types.hpp"

namespace musa {

enum class CovarianceEstimator { CLASSICAL, ROBUST_PAIRWISE };

struct CovarianceEstimate {
  Matrix matrix;    // p x p, symmetric, PSD after clipping for the robust path
  Vector location;  // column means (classical) or column medians (robust)
  CovarianceEstimator estimator = CovarianceEstimator::CLASSICAL;
};

double median(std::span<const double> values);

// Median absolute deviation about the median, scaled by the Gaussian
// consistency factor 1.4826.
double mad_scale(std::span<const double> values);

// Unbiased sample covariance (divisor n-1) with column-mean location.
// Requires n >= 2.
CovarianceEstimate classical_covariance(const SensorWindow& w);

// Pairwise robust covariance: column medians for location, corrected MAD for
// scale, off-diagonals from the Gnanadesikan-Kettenring identity
// cov(x,y) = (sigma^2(x+y) - sigma^2(x-y)) / 4, then eigenvalue clipping to
// restore positive semidefiniteness. Requires n >= 4; a zero MAD in any
// column raises DegenerateScaleError naming it.
CovarianceEstimate robust_covariance(const SensorWindow& w);

}  // namespace musa
