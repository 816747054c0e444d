#include "musa/sampler.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace musa {

RankedIndices rank_first_component(const ComponentModel& model) {
  if (model.scores.rows() < 1)
    throw PreconditionError("cannot rank an empty score matrix");

  RankedIndices ranked;
  ranked.order.resize(static_cast<size_t>(model.scores.rows()));
  std::iota(ranked.order.begin(), ranked.order.end(), Index{0});
  std::stable_sort(ranked.order.begin(), ranked.order.end(),
                   [&](Index a, Index b) {
                     return model.scores(a, 0) < model.scores(b, 0);
                   });
  return ranked;
}

std::vector<Index> middle_trim(const RankedIndices& ranked, Index n_prime) {
  const Index n = static_cast<Index>(ranked.order.size());
  if (n_prime < 1)
    throw PreconditionError("middle trim needs n' >= 1");
  if (n_prime > n)
    throw PreconditionError("middle trim needs n' <= n (n' = " +
                            std::to_string(n_prime) + ", n = " +
                            std::to_string(n) + ")");

  const Index drop_low = (n - n_prime) / 2;
  return {ranked.order.begin() + drop_low,
          ranked.order.begin() + drop_low + n_prime};
}

Index reduction_level(Index n, ReductionLevel level) {
  if (n < 2)
    throw PreconditionError("reduction level needs n >= 2, got " +
                            std::to_string(n));
  switch (level) {
    case ReductionLevel::HALF:
      return n / 2;
    case ReductionLevel::LOG2:
      return std::max<Index>(
          1, std::bit_width(static_cast<uint64_t>(n)) - 1);
  }
  return n / 2;
}

ReductionResult musa_reduce(const SensorWindow& w, Index n_prime,
                            Technique technique, bool final_sort,
                            uint64_t ica_seed) {
  w.validate();
  if (n_prime < 1 || n_prime > w.rows())
    throw PreconditionError("reduction size must satisfy 1 <= n' <= n");

  ComponentModel model;
  switch (technique) {
    case Technique::PCA:
      model = pca_transform(w);
      break;
    case Technique::ROBUST_PCA:
      model = robust_pca_transform(w);
      break;
    case Technique::ICA:
      model = ica_transform(w, ica_seed);
      break;
  }

  ReductionResult result;
  result.technique = technique;
  result.n_prime = n_prime;
  result.retained_indices = middle_trim(rank_first_component(model), n_prime);
  if (final_sort)
    std::sort(result.retained_indices.begin(), result.retained_indices.end());

  result.reduced.values.resize(n_prime, w.cols());
  for (Index i = 0; i < n_prime; ++i)
    result.reduced.values.row(i) =
        w.values.row(result.retained_indices[static_cast<size_t>(i)]);
  result.reduced.column_names = w.column_names;
  return result;
}

}  // namespace musa
