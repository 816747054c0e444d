#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace musa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Technique { PCA, ROBUST_PCA, ICA };

std::string to_string(Technique t);
Technique technique_from_string(const std::string& name);

// Base for all library errors; subclasses name the failure category.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition.
struct PreconditionError : Error {
  using Error::Error;
};

// An iterative method exhausted its iteration budget.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// A scale estimate (MAD, standard deviation) collapsed to zero.
struct DegenerateScaleError : Error {
  using Error::Error;
};

// A column mean of zero makes a relative quantity undefined.
struct ZeroMeanError : Error {
  using Error::Error;
};

// Numerical failure not covered by the categories above.
struct NumericError : Error {
  using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
  using Error::Error;
};

// Random deployment could not produce a connected network.
struct DeploymentError : Error {
  using Error::Error;
};

}  // namespace musa
