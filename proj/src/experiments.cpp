#include "musa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "musa/csv.hpp"
#include "musa/fidelity.hpp"
#include "musa/parallel.hpp"

namespace musa {

namespace {

std::string level_name(ReductionLevel level) {
  return level == ReductionLevel::HALF ? "HALF" : "LOG2";
}

ComponentModel transform_for(const SensorWindow& w, Technique technique,
                             uint64_t seed) {
  switch (technique) {
    case Technique::PCA:
      return pca_transform(w);
    case Technique::ROBUST_PCA:
      return robust_pca_transform(w);
    case Technique::ICA:
      return ica_transform(w, seed);
  }
  return pca_transform(w);
}

SensorWindow take_rows(const SensorWindow& w, const std::vector<Index>& rows) {
  SensorWindow out;
  out.values.resize(static_cast<Index>(rows.size()), w.cols());
  for (size_t i = 0; i < rows.size(); ++i)
    out.values.row(static_cast<Index>(i)) = w.values.row(rows[i]);
  out.column_names = w.column_names;
  return out;
}

}  // namespace

ReductionResult cmd_reduce(const ReduceOptions& options) {
  if (options.n_prime.has_value() == options.level.has_value())
    throw PreconditionError("specify exactly one of n' and a reduction level");

  const SensorWindow window = read_window_csv(options.input);
  const Index n_prime = options.level
                            ? reduction_level(window.rows(), *options.level)
                            : *options.n_prime;

  ReductionResult result = musa_reduce(window, n_prime, options.technique,
                                       options.final_sort, options.seed);
  write_window_csv(options.output, result.reduced);

  std::ostringstream meta;
  meta << "retained_indices=";
  for (size_t i = 0; i < result.retained_indices.size(); ++i)
    meta << (i ? "," : "") << result.retained_indices[i];
  meta << "\n";
  write_file_atomic(options.output + ".meta", meta.str());
  return result;
}

std::vector<FidelityRow> run_fidelity(const FidelityPlan& plan) {
  if (plan.replications < 1)
    throw PreconditionError("fidelity plan needs at least one replication");
  if (plan.distributions.empty() || plan.data_sizes.empty() ||
      plan.techniques.empty() || plan.levels.empty())
    throw PreconditionError("fidelity plan must cover at least one scenario");

  const ReferenceMoments reference =
      plan.moments_path
          ? ReferenceMoments::load(*plan.moments_path)
          : ReferenceMoments::synthesize(plan.reference_p, plan.reference_seed);

  struct Task {
    size_t dist = 0;
    size_t size = 0;
    int rep = 0;
  };
  std::vector<Task> tasks;
  for (size_t d = 0; d < plan.distributions.size(); ++d)
    for (size_t s = 0; s < plan.data_sizes.size(); ++s)
      for (int r = 0; r < plan.replications; ++r) tasks.push_back({d, s, r});

  struct Outcome {
    bool ok = false;
    double error_pct = 0.0;
    double min_p = 0.0;
  };
  const size_t cells = plan.techniques.size() * plan.levels.size();
  std::vector<std::vector<Outcome>> outcomes(tasks.size(),
                                             std::vector<Outcome>(cells));

  parallel_for(tasks.size(), plan.jobs, [&](size_t t) {
    const Task& task = tasks[t];
    const uint64_t seed = plan.base_seed + static_cast<uint64_t>(task.rep);
    const DistributionSpec spec =
        reference.to_spec(plan.distributions[task.dist], seed);
    const SensorWindow window =
        generate_window(spec, plan.data_sizes[task.size]);

    for (size_t k = 0; k < plan.techniques.size(); ++k) {
      ComponentModel model;
      bool model_ok = true;
      try {
        model = transform_for(window, plan.techniques[k], seed);
      } catch (const Error&) {
        model_ok = false;
      }
      RankedIndices ranked;
      if (model_ok) ranked = rank_first_component(model);

      for (size_t l = 0; l < plan.levels.size(); ++l) {
        Outcome& out = outcomes[t][k * plan.levels.size() + l];
        if (!model_ok) continue;
        try {
          const Index n_prime =
              reduction_level(window.rows(), plan.levels[l]);
          std::vector<Index> kept = middle_trim(ranked, n_prime);
          std::sort(kept.begin(), kept.end());
          const SensorWindow reduced = take_rows(window, kept);
          out.error_pct = relative_error(window, reduced).max_error_pct;
          out.min_p = anova_compare(window, reduced).min_p_value;
          out.ok = true;
        } catch (const Error&) {
          out.ok = false;
        }
      }
    }
  });

  std::vector<FidelityRow> rows;
  for (size_t d = 0; d < plan.distributions.size(); ++d)
    for (size_t s = 0; s < plan.data_sizes.size(); ++s)
      for (size_t k = 0; k < plan.techniques.size(); ++k)
        for (size_t l = 0; l < plan.levels.size(); ++l) {
          FidelityRow row;
          row.distribution = plan.distributions[d];
          row.n = plan.data_sizes[s];
          row.technique = plan.techniques[k];
          row.level = plan.levels[l];
          row.replications = plan.replications;

          std::vector<double> errors;
          double min_p_sum = 0.0;
          for (size_t t = 0; t < tasks.size(); ++t) {
            if (tasks[t].dist != d || tasks[t].size != s) continue;
            const Outcome& out = outcomes[t][k * plan.levels.size() + l];
            if (!out.ok) {
              ++row.failures;
              continue;
            }
            errors.push_back(out.error_pct);
            min_p_sum += out.min_p;
          }

          if (!errors.empty()) {
            const double n = static_cast<double>(errors.size());
            double sum = 0.0;
            for (double e : errors) sum += e;
            row.mean_error_pct = sum / n;
            row.mean_min_p = min_p_sum / n;
            if (errors.size() > 1) {
              double ss = 0.0;
              for (double e : errors)
                ss += (e - row.mean_error_pct) * (e - row.mean_error_pct);
              row.ci_error_pct = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
            }
          }
          rows.push_back(row);
        }
  return rows;
}

void write_fidelity_csv(const std::string& path,
                        const std::vector<FidelityRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "distribution,n,technique,level,mean_error_pct,ci_error_pct,"
         "mean_min_p,replications,failures\n";
  for (const FidelityRow& row : rows)
    out << to_string(row.distribution) << ',' << row.n << ','
        << to_string(row.technique) << ',' << level_name(row.level) << ','
        << row.mean_error_pct << ',' << row.ci_error_pct << ','
        << row.mean_min_p << ',' << row.replications << ',' << row.failures
        << '\n';
  write_file_atomic(path, out.str());
}

std::vector<SweepRow> run_simulate(const SimulatePlan& plan,
                                   const std::string& output_path) {
  const std::vector<SweepRow> rows =
      experiment_sweep(plan.base, plan.axis, plan.values, plan.reductions,
                       plan.replications, plan.vars_per_observation);
  write_sweep_csv(output_path, rows);

  if (plan.event_log_dir) {
    std::filesystem::create_directories(*plan.event_log_dir);
    for (int rep = 0; rep < plan.replications; ++rep) {
      for (long long value : plan.values) {
        SimConfig cfg = plan.base;
        cfg.seed = plan.base.seed + static_cast<uint64_t>(rep);
        switch (plan.axis) {
          case SweepAxis::DATA_SIZE:
            cfg.data_size_n = static_cast<int>(value);
            break;
          case SweepAxis::NUM_NODES:
            cfg.num_nodes = static_cast<int>(value);
            break;
          case SweepAxis::NUM_SOURCES:
            cfg.num_sources = static_cast<int>(value);
            break;
        }
        const Topology topo = deploy(cfg);
        for (Reduction reduction : plan.reductions) {
          cfg.reduction = reduction;
          const std::vector<long long> sizes(
              static_cast<size_t>(cfg.num_sources),
              values_per_source(cfg, plan.vars_per_observation));
          std::vector<HopEvent> log;
          run_simulation(topo, cfg, sizes, &log);

          std::ostringstream body;
          body.precision(12);
          body << "time_s,from,to,bits,distance_m\n";
          for (const HopEvent& ev : log)
            body << ev.time << ',' << ev.from << ',' << ev.to << ','
                 << ev.bits << ',' << ev.distance_m << '\n';
          const std::string name = *plan.event_log_dir + "/events_" +
                                   to_string(plan.axis) + "_" +
                                   std::to_string(value) + "_" +
                                   to_string(reduction) + "_rep" +
                                   std::to_string(rep) + ".csv";
          write_file_atomic(name, body.str());
        }
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "axis_value,reduction,mean_energy_J,ci_energy_J,mean_delay_s,"
         "ci_delay_s,packets_generated,packets_delivered\n";
  for (const SweepRow& row : rows)
    out << row.axis_value << ',' << to_string(row.reduction) << ','
        << row.mean_energy_J << ',' << row.ci_energy_J << ','
        << row.mean_delay_s << ',' << row.ci_delay_s << ','
        << row.packets_generated << ',' << row.packets_delivered << '\n';
  write_file_atomic(path, out.str());
}

}  // namespace musa
