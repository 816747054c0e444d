#pragma once

#include <optional>
#include <string>
#include <vector>

#include "musa/datagen.hpp"
#include "musa/netsim.hpp"
#include "musa/sampler.hpp"

namespace musa {

// Replication budget matching the representativeness study.
inline constexpr int kDefaultFidelityReplications = 1000;
inline constexpr int kDefaultSweepReplications = 30;
inline constexpr Index kDefaultReferenceVariables = 19;

struct ReduceOptions {
  std::string input;
  std::string output;
  std::optional<Index> n_prime;              // exactly one of n_prime / level
  std::optional<ReductionLevel> level;
  Technique technique = Technique::PCA;
  bool final_sort = true;
  uint64_t seed = 0;  // ICA initialization
};

// Reads the window, reduces it, writes the reduced CSV plus a
// `<output>.meta` sidecar carrying `retained_indices=...` (0-based data
// rows). Returns the reduction for inspection.
ReductionResult cmd_reduce(const ReduceOptions& options);

struct FidelityPlan {
  std::vector<Family> distributions = {Family::GAUSSIAN, Family::SKEW_GAUSSIAN,
                                       Family::STUDENT_T};
  std::vector<Index> data_sizes = {720, 1440, 2160, 2880, 3600};
  std::vector<Technique> techniques = {Technique::PCA, Technique::ROBUST_PCA,
                                       Technique::ICA};
  std::vector<ReductionLevel> levels = {ReductionLevel::HALF,
                                        ReductionLevel::LOG2};
  int replications = kDefaultFidelityReplications;
  uint64_t base_seed = 0;
  Index reference_p = kDefaultReferenceVariables;
  uint64_t reference_seed = 0;
  std::optional<std::string> moments_path;  // overrides the synthetic reference
  int jobs = 0;                             // 0 = hardware concurrency
};

struct FidelityRow {
  Family distribution = Family::GAUSSIAN;
  Index n = 0;
  Technique technique = Technique::PCA;
  ReductionLevel level = ReductionLevel::HALF;
  double mean_error_pct = 0.0;
  double ci_error_pct = 0.0;
  double mean_min_p = 0.0;
  int replications = 0;  // requested
  int failures = 0;      // replications lost to convergence/degeneracy errors
};

// Per-replication min p-values and max errors folded into one row per
// (distribution, n, technique, level). Replication r draws with seed
// base_seed + r; windows are shared across techniques and levels.
std::vector<FidelityRow> run_fidelity(const FidelityPlan& plan);

void write_fidelity_csv(const std::string& path,
                        const std::vector<FidelityRow>& rows);

struct SimulatePlan {
  SimConfig base;
  SweepAxis axis = SweepAxis::DATA_SIZE;
  std::vector<long long> values = {256, 512, 1024, 2048};
  std::vector<Reduction> reductions = {Reduction::NONE, Reduction::HALF,
                                       Reduction::LOG2};
  int replications = kDefaultSweepReplications;
  int vars_per_observation = 3;
  std::optional<std::string> event_log_dir;  // per-run hop event dumps
};

std::vector<SweepRow> run_simulate(const SimulatePlan& plan,
                                   const std::string& output_path);

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

}  // namespace musa
