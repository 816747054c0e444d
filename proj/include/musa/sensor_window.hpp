#pragma once

#include <optional>
#include <string>
#include <vector>

#include "musa/types.hpp"

namespace musa {

// One node's observations over a stationary epoch: n rows (time instants)
// by p columns (variables).
struct SensorWindow {
  Matrix values;
  std::optional<std::vector<std::string>> column_names;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }

  // Enforces n >= 2, p >= 1, all entries finite, and column-name arity.
  void validate() const;
};

}  // namespace musa
