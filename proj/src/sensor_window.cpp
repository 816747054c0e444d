#include "musa/sensor_window.hpp"

#include <cmath>

namespace musa {

std::string to_string(Technique t) {
  switch (t) {
    case Technique::PCA:
      return "PCA";
    case Technique::ROBUST_PCA:
      return "ROBUST_PCA";
    case Technique::ICA:
      return "ICA";
  }
  return "PCA";
}

Technique technique_from_string(const std::string& name) {
  if (name == "PCA" || name == "pca") return Technique::PCA;
  if (name == "ROBUST_PCA" || name == "robust_pca" || name == "robust-pca")
    return Technique::ROBUST_PCA;
  if (name == "ICA" || name == "ica") return Technique::ICA;
  throw PreconditionError("unknown technique: " + name);
}

void SensorWindow::validate() const {
  if (values.rows() < 2)
    throw PreconditionError("sensor window needs at least 2 observations, got " +
                            std::to_string(values.rows()));
  if (values.cols() < 1)
    throw PreconditionError("sensor window needs at least 1 variable");
  if (!values.allFinite())
    throw PreconditionError("sensor window contains non-finite entries");
  if (column_names && static_cast<Index>(column_names->size()) != values.cols())
    throw PreconditionError("column_names size does not match variable count");
}

}  // namespace musa
