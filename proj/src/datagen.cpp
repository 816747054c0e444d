#include "musa/datagen.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "musa/symmetric_eigen.hpp"

namespace musa {

std::string to_string(Family f) {
  switch (f) {
    case Family::GAUSSIAN:
      return "gaussian";
    case Family::SKEW_GAUSSIAN:
      return "skew_gaussian";
    case Family::STUDENT_T:
      return "student_t";
  }
  return "gaussian";
}

Family family_from_string(const std::string& name) {
  if (name == "gaussian") return Family::GAUSSIAN;
  if (name == "skew_gaussian" || name == "skew-gaussian" || name == "skew")
    return Family::SKEW_GAUSSIAN;
  if (name == "student_t" || name == "student-t" || name == "student")
    return Family::STUDENT_T;
  throw PreconditionError("unknown distribution family: " + name);
}

void DistributionSpec::validate() const {
  const Index p = location.size();
  if (p < 1) throw PreconditionError("distribution needs at least 1 variable");
  if (scale.rows() != p || scale.cols() != p)
    throw PreconditionError("scale matrix must be p x p");
  const double mag = std::max(1.0, scale.cwiseAbs().maxCoeff());
  if ((scale - scale.transpose()).cwiseAbs().maxCoeff() > 1e-10 * mag)
    throw PreconditionError("scale matrix must be symmetric");
  if (!(dof > 0.0)) throw PreconditionError("student-t dof must be positive");
  if (!std::isfinite(skew_alpha))
    throw PreconditionError("skew_alpha must be finite");
}

SensorWindow generate_window(const DistributionSpec& spec, Index n) {
  spec.validate();
  if (n < 2) throw PreconditionError("generation needs n >= 2");
  const Index p = spec.location.size();

  const Matrix factor = symmetric_sqrt(spec.scale);  // rejects non-PSD scales

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::chi_squared_distribution<double> chi2(spec.dof);
  const double delta = spec.skew_alpha / std::sqrt(1.0 + spec.skew_alpha * spec.skew_alpha);
  const double delta_rest = std::sqrt(1.0 - delta * delta);

  SensorWindow w;
  w.values.resize(n, p);
  Vector z(p);
  for (Index i = 0; i < n; ++i) {
    switch (spec.family) {
      case Family::GAUSSIAN:
        for (Index j = 0; j < p; ++j) z[j] = gauss(rng);
        break;
      case Family::SKEW_GAUSSIAN:
        for (Index j = 0; j < p; ++j) {
          const double u0 = gauss(rng);
          const double u1 = gauss(rng);
          z[j] = delta * std::abs(u0) + delta_rest * u1;
        }
        break;
      case Family::STUDENT_T: {
        for (Index j = 0; j < p; ++j) z[j] = gauss(rng);
        double g = chi2(rng);
        while (g == 0.0) g = chi2(rng);
        z /= std::sqrt(g / spec.dof);
        break;
      }
    }
    w.values.row(i) = (spec.location + factor * z).transpose();
  }
  return w;
}

double angstrom_index(double humidity, double temperature) {
  return humidity / 20.0 + (27.0 - temperature) / 10.0;
}

namespace {

constexpr int kQuadratureSamples = 33;

double transect_mean(const Field& field, double t,
                     std::array<double, 2> center, double half_width,
                     int component) {
  const double step = 2.0 * half_width / kQuadratureSamples;
  double total = 0.0;
  for (int k = 0; k < kQuadratureSamples; ++k) {
    const double offset = -half_width + (k + 0.5) * step;
    total += field(t, {center[0] + offset, center[1]})[static_cast<size_t>(component)];
  }
  return total / kQuadratureSamples;
}

}  // namespace

std::array<double, 3> sense(const SensorNodeModel& node, const Field& field,
                            double t) {
  double f1 = 0.0;
  double f2 = 0.0;
  if (node.characteristic == Characteristic::POINTWISE) {
    const auto values = field(t, node.position);
    f1 = values[0];
    f2 = values[1];
  } else {
    if (node.half_widths[0] <= 0.0 || node.half_widths[1] <= 0.0)
      throw PreconditionError("integration half-widths must be positive");
    f1 = transect_mean(field, t, node.position, node.half_widths[0], 0);
    f2 = transect_mean(field, t, node.position, node.half_widths[1], 1);
  }
  return {f1, f2, angstrom_index(f1, f2)};
}

long long jain_rounds(double sigma_hat, double mean_error,
                      double precision_pct, double c) {
  if (!(sigma_hat >= 0.0)) throw PreconditionError("sigma_hat must be >= 0");
  if (!(precision_pct > 0.0)) throw PreconditionError("precision must be > 0");
  if (mean_error == 0.0)
    throw PreconditionError("mean error of zero leaves the precision undefined");
  if (sigma_hat == 0.0) return 0;
  const double root = 100.0 * c * sigma_hat / (precision_pct * mean_error);
  return static_cast<long long>(std::ceil(root * root));
}

ReferenceMoments ReferenceMoments::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open reference moments file: " + path);

  auto fail = [&](int line, const std::string& why) -> ParseError {
    return ParseError(path + ":" + std::to_string(line) + ": " + why);
  };

  Index p = 0;
  if (!(in >> p) || p < 1) throw fail(1, "expected positive variable count");

  ReferenceMoments m;
  m.mean.resize(p);
  for (Index j = 0; j < p; ++j)
    if (!(in >> m.mean[j])) throw fail(2, "expected " + std::to_string(p) + " means");

  m.covariance.resize(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j)
      if (!(in >> m.covariance(i, j)))
        throw fail(3 + static_cast<int>(i), "truncated covariance row");
  return m;
}

void ReferenceMoments::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write reference moments file: " + path);
  const Index p = mean.size();
  out.precision(17);
  out << p << "\n";
  for (Index j = 0; j < p; ++j) out << mean[j] << (j + 1 < p ? ' ' : '\n');
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j)
      out << covariance(i, j) << (j + 1 < p ? ' ' : '\n');
}

ReferenceMoments ReferenceMoments::synthesize(Index p, uint64_t seed) {
  if (p < 1) throw PreconditionError("need at least one variable");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> mean_range(30.0, 70.0);

  Matrix a(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) a(i, j) = gauss(rng);

  ReferenceMoments m;
  m.covariance = a.transpose() * a + static_cast<double>(p) * Matrix::Identity(p, p);
  m.covariance = 0.5 * (m.covariance + m.covariance.transpose());
  m.mean.resize(p);
  for (Index j = 0; j < p; ++j) m.mean[j] = mean_range(rng);
  return m;
}

DistributionSpec ReferenceMoments::to_spec(Family family, uint64_t seed) const {
  DistributionSpec spec;
  spec.family = family;
  spec.location = mean;
  spec.scale = covariance;
  spec.seed = seed;
  return spec;
}

}  // namespace musa
