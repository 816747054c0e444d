#pragma once

#include <random>

#include "musa/sensor_window.hpp"
#include "musa/types.hpp"

namespace musa::testutil {

inline Matrix random_symmetric(Index p, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Matrix a(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) a(i, j) = gauss(rng);
  return 0.5 * (a + a.transpose());
}

inline SensorWindow random_window(Index n, Index p, std::mt19937_64& rng,
                                  double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  SensorWindow w;
  w.values.resize(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) w.values(i, j) = gauss(rng);
  return w;
}

inline double sample_skewness(const Vector& x) {
  const double n = static_cast<double>(x.size());
  const double mean = x.mean();
  const double m2 = (x.array() - mean).square().sum() / n;
  const double m3 = (x.array() - mean).cube().sum() / n;
  return m3 / std::pow(m2, 1.5);
}

inline double sample_kurtosis(const Vector& x) {
  const double n = static_cast<double>(x.size());
  const double mean = x.mean();
  const double m2 = (x.array() - mean).square().sum() / n;
  const double m4 = (x.array() - mean).pow(4).sum() / n;
  return m4 / (m2 * m2);
}

}  // namespace musa::testutil
