#pragma once

#include <vector>

#include "musa/sensor_window.hpp"
#include "musa/types.hpp"

namespace musa {

struct AnovaVariable {
  double f_statistic = 0.0;
  double p_value = 1.0;
  long long df_between = 1;
  long long df_within = 0;
  bool degenerate = false;  // within-group variance collapsed to zero
};

struct AnovaResult {
  std::vector<AnovaVariable> per_variable;
  double min_p_value = 1.0;
};

struct ErrorResult {
  std::vector<double> per_variable_error_pct;
  double max_error_pct = 0.0;
};

// One-way two-group ANOVA of each variable of `original` against `reduced`.
// A zero within-group variance with a nonzero between-group variance is
// reported as p = 0 with the degenerate flag; if both variances vanish the
// groups are identical and p = 1.
AnovaResult anova_compare(const SensorWindow& original,
                          const SensorWindow& reduced);

// 100 * max_j |mean_orig_j - mean_reduced_j| / |mean_orig_j|. A zero original
// column mean raises ZeroMeanError naming the column.
ErrorResult relative_error(const SensorWindow& original,
                           const SensorWindow& reduced);

// P(F > x) for the F(d1, d2) distribution, evaluated through the regularized
// incomplete beta function (continued fraction, tolerance 1e-12, at most 500
// terms).
double f_distribution_sf(double x, long long d1, long long d2);

// Regularized incomplete beta I_x(a, b); shared with the F tail above.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace musa
