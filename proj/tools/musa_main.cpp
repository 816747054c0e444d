#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "musa/config.hpp"
#include "musa/csv.hpp"
#include "musa/experiments.hpp"

namespace {

uint64_t default_seed() {
  if (const char* env = std::getenv("MUSA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw musa::ParseError("MUSA_SEED is not a valid seed: " +
                             std::string(env));
    }
  }
  return 0;
}

musa::ReferenceMoments resolve_reference(const std::string& moments_path,
                                         musa::Index p, uint64_t seed) {
  if (!moments_path.empty()) return musa::ReferenceMoments::load(moments_path);
  return musa::ReferenceMoments::synthesize(p, seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MuSA multivariate sampling experiments"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  bool seed_given = false;
  app.add_option("--seed", seed, "base RNG seed (default MUSA_SEED or 0)")
      ->each([&](const std::string&) { seed_given = true; });

  // ---- generate ----------------------------------------------------------
  auto* generate = app.add_subcommand(
      "generate", "draw a pseudo-real sensor window as CSV");
  std::string gen_family = "gaussian";
  int gen_n = 720;
  int gen_p = static_cast<int>(musa::kDefaultReferenceVariables);
  std::string gen_moments, gen_out;
  double gen_alpha = 0.5, gen_dof = 2.0;
  generate->add_option("--family", gen_family,
                       "gaussian, skew_gaussian or student_t");
  generate->add_option("--n", gen_n, "observations to draw")->required();
  generate->add_option("--p", gen_p, "variables of the synthetic reference");
  generate->add_option("--moments", gen_moments,
                       "reference moments file (overrides --p)");
  generate->add_option("--skew-alpha", gen_alpha, "skew-gaussian asymmetry");
  generate->add_option("--dof", gen_dof, "student-t degrees of freedom");
  generate->add_option("--out", gen_out, "output CSV")->required();

  // ---- reduce ------------------------------------------------------------
  auto* reduce = app.add_subcommand("reduce", "apply the sampling to a CSV");
  std::string red_in, red_out, red_technique = "pca", red_level;
  long long red_n_prime = -1;
  bool red_no_final_sort = false;
  reduce->add_option("--in", red_in, "input CSV")->required();
  reduce->add_option("--n-prime", red_n_prime, "target row count");
  reduce->add_option("--level", red_level, "half or log2 (instead of --n-prime)");
  reduce->add_option("--technique", red_technique, "pca, robust-pca or ica");
  reduce->add_flag("--no-final-sort", red_no_final_sort,
                   "keep rows in score-rank order");
  reduce->add_option("--out", red_out, "output CSV")->required();

  // ---- fidelity ----------------------------------------------------------
  auto* fidelity = app.add_subcommand(
      "fidelity", "replicated representativeness experiment");
  std::vector<std::string> fid_distributions = {"gaussian", "skew_gaussian",
                                                "student_t"};
  std::vector<long long> fid_sizes = {720, 1440, 2160, 2880, 3600};
  std::vector<std::string> fid_techniques = {"pca", "robust-pca", "ica"};
  std::vector<std::string> fid_levels = {"half", "log2"};
  int fid_replications = musa::kDefaultFidelityReplications;
  int fid_p = static_cast<int>(musa::kDefaultReferenceVariables);
  int fid_jobs = 0;
  std::string fid_moments, fid_out;
  fidelity->add_option("--distributions", fid_distributions, "families to run");
  fidelity->add_option("--n", fid_sizes, "window sizes");
  fidelity->add_option("--techniques", fid_techniques, "component techniques");
  fidelity->add_option("--levels", fid_levels, "reduction levels");
  fidelity->add_option("--replications", fid_replications, "independent data sets");
  fidelity->add_option("--p", fid_p, "variables of the synthetic reference");
  fidelity->add_option("--moments", fid_moments, "reference moments file");
  fidelity->add_option("--jobs", fid_jobs, "worker threads (0 = auto)");
  fidelity->add_option("--out", fid_out, "results CSV")->required();

  // ---- simulate ----------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "network sweep experiment");
  std::string sim_axis = "data_size", sim_config, sim_out, sim_event_dir;
  std::vector<long long> sim_values;
  std::vector<std::string> sim_reductions = {"none", "half", "log2"};
  int sim_replications = musa::kDefaultSweepReplications;
  int sim_vars = 3;
  simulate->add_option("--axis", sim_axis,
                       "data_size, num_nodes or num_sources");
  simulate->add_option("--values", sim_values, "sweep values");
  simulate->add_option("--reductions", sim_reductions, "none, half, log2");
  simulate->add_option("--replications", sim_replications, "seeds per point");
  simulate->add_option("--vars-p", sim_vars, "variables per observation");
  simulate->add_option("--config", sim_config, "key = value simulation config");
  simulate->add_option("--event-log-dir", sim_event_dir,
                       "dump per-run hop events here");
  simulate->add_option("--out", sim_out, "results CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!seed_given) seed = default_seed();

    if (*generate) {
      const musa::ReferenceMoments reference =
          resolve_reference(gen_moments, gen_p, 0);
      musa::DistributionSpec spec =
          reference.to_spec(musa::family_from_string(gen_family), seed);
      spec.skew_alpha = gen_alpha;
      spec.dof = gen_dof;
      const musa::SensorWindow window = musa::generate_window(spec, gen_n);
      musa::write_window_csv(gen_out, window);
      std::cout << "wrote " << window.rows() << "x" << window.cols() << " window to "
                << gen_out << "\n";
    } else if (*reduce) {
      musa::ReduceOptions options;
      options.input = red_in;
      options.output = red_out;
      options.technique = musa::technique_from_string(red_technique);
      options.final_sort = !red_no_final_sort;
      options.seed = seed;
      if (red_n_prime >= 0) options.n_prime = red_n_prime;
      if (!red_level.empty())
        options.level = red_level == "half" ? musa::ReductionLevel::HALF
                        : red_level == "log2"
                            ? musa::ReductionLevel::LOG2
                            : throw musa::PreconditionError(
                                  "unknown level: " + red_level);
      const musa::ReductionResult result = musa::cmd_reduce(options);
      std::cout << "retained " << result.n_prime << " rows into " << red_out
                << "\n";
    } else if (*fidelity) {
      musa::FidelityPlan plan;
      plan.distributions.clear();
      for (const auto& name : fid_distributions)
        plan.distributions.push_back(musa::family_from_string(name));
      plan.data_sizes.assign(fid_sizes.begin(), fid_sizes.end());
      plan.techniques.clear();
      for (const auto& name : fid_techniques)
        plan.techniques.push_back(musa::technique_from_string(name));
      plan.levels.clear();
      for (const auto& name : fid_levels)
        plan.levels.push_back(name == "half" ? musa::ReductionLevel::HALF
                              : name == "log2"
                                  ? musa::ReductionLevel::LOG2
                                  : throw musa::PreconditionError(
                                        "unknown level: " + name));
      plan.replications = fid_replications;
      plan.base_seed = seed;
      plan.reference_p = fid_p;
      plan.jobs = fid_jobs;
      if (!fid_moments.empty()) plan.moments_path = fid_moments;
      const auto rows = musa::run_fidelity(plan);
      musa::write_fidelity_csv(fid_out, rows);
      std::cout << "wrote " << rows.size() << " result rows to " << fid_out
                << "\n";
    } else if (*simulate) {
      musa::SimulatePlan plan;
      if (!sim_config.empty())
        musa::apply_sim_config(musa::parse_flat_config(sim_config), plan.base);
      plan.base.seed = seed;
      plan.axis = musa::sweep_axis_from_string(sim_axis);
      if (!sim_values.empty()) plan.values = sim_values;
      plan.reductions.clear();
      for (const auto& name : sim_reductions)
        plan.reductions.push_back(musa::reduction_from_string(name));
      plan.replications = sim_replications;
      plan.vars_per_observation = sim_vars;
      if (!sim_event_dir.empty()) plan.event_log_dir = sim_event_dir;
      const auto rows = musa::run_simulate(plan, sim_out);
      std::cout << "wrote " << rows.size() << " sweep rows to " << sim_out
                << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
