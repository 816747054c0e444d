#include "musa/fidelity.hpp"

#include <cmath>
#include <limits>

namespace musa {

namespace {

constexpr double kBetaTolerance = 1e-12;
constexpr int kBetaMaxTerms = 500;

// Lentz's continued fraction for the incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kBetaMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kBetaTolerance) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge in " +
                     std::to_string(kBetaMaxTerms) + " terms");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw PreconditionError("incomplete beta requires positive shape parameters");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_sf(double x, long long d1, long long d2) {
  if (d1 < 1 || d2 < 1)
    throw PreconditionError("F distribution needs both df >= 1");
  if (!(x >= 0.0)) throw PreconditionError("F statistic must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  const double da = static_cast<double>(d1);
  const double db = static_cast<double>(d2);
  return regularized_incomplete_beta(db / 2.0, da / 2.0, db / (db + da * x));
}

AnovaResult anova_compare(const SensorWindow& original,
                          const SensorWindow& reduced) {
  original.validate();
  reduced.validate();
  if (original.cols() != reduced.cols())
    throw PreconditionError("windows must share the same variables");

  const Index p = original.cols();
  const double n1 = static_cast<double>(original.rows());
  const double n2 = static_cast<double>(reduced.rows());
  const long long df_within = original.rows() + reduced.rows() - 2;

  AnovaResult result;
  result.per_variable.resize(static_cast<size_t>(p));
  result.min_p_value = 1.0;

  for (Index j = 0; j < p; ++j) {
    const double m1 = original.values.col(j).mean();
    const double m2 = reduced.values.col(j).mean();
    const double grand = (n1 * m1 + n2 * m2) / (n1 + n2);

    const double ss_between =
        n1 * (m1 - grand) * (m1 - grand) + n2 * (m2 - grand) * (m2 - grand);
    const double ss_within =
        (original.values.col(j).array() - m1).square().sum() +
        (reduced.values.col(j).array() - m2).square().sum();

    AnovaVariable& var = result.per_variable[static_cast<size_t>(j)];
    var.df_between = 1;
    var.df_within = df_within;

    const double ms_between = ss_between;  // df_between = 1
    const double ms_within = ss_within / static_cast<double>(df_within);
    if (ms_within == 0.0) {
      var.degenerate = true;
      if (ms_between > 0.0) {
        var.f_statistic = std::numeric_limits<double>::infinity();
        var.p_value = 0.0;
      } else {
        var.f_statistic = 0.0;
        var.p_value = 1.0;
      }
    } else {
      var.f_statistic = ms_between / ms_within;
      var.p_value = f_distribution_sf(var.f_statistic, 1, df_within);
    }
    result.min_p_value = std::min(result.min_p_value, var.p_value);
  }
  return result;
}

ErrorResult relative_error(const SensorWindow& original,
                           const SensorWindow& reduced) {
  original.validate();
  reduced.validate();
  if (original.cols() != reduced.cols())
    throw PreconditionError("windows must share the same variables");

  const Index p = original.cols();
  ErrorResult result;
  result.per_variable_error_pct.resize(static_cast<size_t>(p));
  result.max_error_pct = 0.0;

  for (Index j = 0; j < p; ++j) {
    const double m_orig = original.values.col(j).mean();
    if (m_orig == 0.0)
      throw ZeroMeanError("column " + std::to_string(j) +
                          " has zero mean, relative error undefined");
    const double m_red = reduced.values.col(j).mean();
    const double err = 100.0 * std::abs(m_orig - m_red) / std::abs(m_orig);
    result.per_variable_error_pct[static_cast<size_t>(j)] = err;
    result.max_error_pct = std::max(result.max_error_pct, err);
  }
  return result;
}

}  // namespace musa
