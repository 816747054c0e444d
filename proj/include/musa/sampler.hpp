#pragma once

#include <cstdint>
#include <vector>

#include "musa/components.hpp"
#include "musa/sensor_window.hpp"

namespace musa {

// Row indices ordered so first-component scores are nondecreasing.
struct RankedIndices {
  std::vector<Index> order;
};

enum class ReductionLevel { HALF, LOG2 };

struct ReductionResult {
  std::vector<Index> retained_indices;  // ascending when final_sort was on
  SensorWindow reduced;                 // n' x p, rows copied verbatim
  Technique technique = Technique::PCA;
  Index n_prime = 0;
};

// Stable sort of row indices by ascending first-column score; ties keep the
// original arrival order.
RankedIndices rank_first_component(const ComponentModel& model);

// Drops floor((n - n')/2) indices from the low-score end and the remaining
// ceil((n - n')/2) from the high-score end, leaving exactly n' indices in
// ranking order. Requires 1 <= n' <= n.
std::vector<Index> middle_trim(const RankedIndices& ranked, Index n_prime);

// n' = floor(n/2) for HALF, max(1, floor(log2 n)) for LOG2. Requires n >= 2.
Index reduction_level(Index n, ReductionLevel level);

// The full per-node reduction: component transform, first-component ranking,
// middle trim. With final_sort (the default) the surviving rows come back in
// original arrival order. ica_seed only matters for Technique::ICA.
ReductionResult musa_reduce(const SensorWindow& w, Index n_prime,
                            Technique technique, bool final_sort = true,
                            uint64_t ica_seed = 0);

}  // namespace musa
