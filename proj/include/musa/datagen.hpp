#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "musa/sensor_window.hpp"
#include "musa/types.hpp"

namespace musa {

enum class Family { GAUSSIAN, SKEW_GAUSSIAN, STUDENT_T };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

// Recipe for pseudo-real data: a location/scale reference plus the shape of
// the innovation law.
struct DistributionSpec {
  Family family = Family::GAUSSIAN;
  Vector location;
  Matrix scale;             // p x p, symmetric PSD
  double skew_alpha = 0.5;  // skew-gaussian asymmetry
  double dof = 2.0;         // student-t degrees of freedom
  uint64_t seed = 0;

  void validate() const;
};

// Draws n rows from the spec. Gaussian rows are location + L z with L the
// symmetric square root of scale; skew-gaussian rows use per-coordinate
// skew-normal innovations (z = delta |u0| + sqrt(1 - delta^2) u1 with
// delta = alpha / sqrt(1 + alpha^2)) before coloring; student-t rows divide
// the Gaussian draw by sqrt(chi2(dof)/dof). Deterministic given the seed.
SensorWindow generate_window(const DistributionSpec& spec, Index n);

// Fire-danger rating from relative humidity (%) and temperature (degC).
double angstrom_index(double humidity, double temperature);

enum class Characteristic { POINTWISE, INTEGRATED };

// A node samples a two-variable field either at its own position or as the
// mean over a transect of half-width d_j along the first coordinate axis
// (midpoint rule, 33 samples per variable).
struct SensorNodeModel {
  std::array<double, 2> position{0.0, 0.0};
  Characteristic characteristic = Characteristic::POINTWISE;
  std::array<double, 2> half_widths{1.0, 1.0};
};

using Field =
    std::function<std::array<double, 2>(double t, std::array<double, 2> pos)>;

// (f1, f2, angstrom(f1, f2)) as seen by the node at instant t.
std::array<double, 3> sense(const SensorNodeModel& node, const Field& field,
                            double t);

// Replication count from a pilot run, ceil((100 c sigma / (x mean))^2).
// sigma_hat = 0 means no variance and zero extra rounds; mean_error = 0 is
// rejected because the target precision is undefined.
long long jain_rounds(double sigma_hat, double mean_error,
                      double precision_pct, double c = 1.96);

// Mean/covariance reference standing in for the unpublished field data set.
struct ReferenceMoments {
  Vector mean;
  Matrix covariance;

  static ReferenceMoments load(const std::string& path);
  void save(const std::string& path) const;

  // Random SPD covariance A^T A + p I (A iid standard normal) with means
  // uniform in [30, 70]. Defaults mirror the 19-variable field data.
  static ReferenceMoments synthesize(Index p = 19, uint64_t seed = 0);

  DistributionSpec to_spec(Family family, uint64_t seed) const;
};

}  // namespace musa
