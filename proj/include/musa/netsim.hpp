#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "musa/types.hpp"

namespace musa {

enum class Reduction { NONE, HALF, LOG2 };

std::string to_string(Reduction r);
Reduction reduction_from_string(const std::string& name);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

// Flat key = value config; keys double as the file format of `--config`.
struct SimConfig {
  int num_nodes = 128;
  int num_sources = 5;
  int data_size_n = 256;
  Reduction reduction = Reduction::NONE;
  double radio_range = 50.0;           // m
  double bandwidth = 250000.0;         // bit/s
  double traffic_start = 500.0;        // s
  double traffic_end = 600.0;          // s
  double data_rate_period = 60.0;      // s
  double sim_end = 1100.0;             // s
  double initial_energy = 100.0;       // J
  int bytes_per_value = 4;
  int payload_bytes_per_packet = 80;   // fixed-size frames on air
  double e_elec = 50e-9;               // J/bit
  double eps_amp = 100e-12;            // J/bit/m^2
  double hop_processing_delay = 1e-3;  // s
  uint64_t seed = 0;

  void validate() const;
};

// Side of the square deployment area holding the density at 8.4791 nodes per
// radio disk: sqrt(pi * r^2 * nodes / 8.4791).
double area_side(int num_nodes, double radio_range);

struct Topology {
  std::vector<Point2> node_positions;  // index 0 is the sink at (0, 0)
  double area_side = 0.0;
  double radio_range = 0.0;
  std::vector<std::vector<int>> adjacency;
  std::vector<int> parent;  // -1 for the sink
  std::vector<int> hops;    // BFS distance from the sink
  uint64_t seed_used = 0;   // seed of the draw that produced connectivity
};

// Builds the shortest-path tree over the unit-disk graph of the given
// positions (position 0 is the sink). Parents are the lowest-id neighbor one
// hop closer to the sink. Returns false if the graph is disconnected.
bool build_topology(const std::vector<Point2>& positions, double radio_range,
                    Topology& out);

// Draws num_nodes positions uniformly over the density-matched square, adds
// the sink at the origin, and keeps redrawing (seed+1, seed+2, ...) until the
// disk graph is connected; gives up after 100 attempts.
Topology deploy(const SimConfig& config);

struct HopEvent {
  double time = 0.0;
  int from = 0;
  int to = 0;
  long long bits = 0;
  double distance_m = 0.0;
};

struct SimReport {
  double total_energy_J = 0.0;
  double mean_delay_s = 0.0;
  long long packets_generated = 0;
  long long packets_delivered = 0;
  std::vector<double> per_node_energy_J;
};

// Event-driven run over a fixed topology: every source emits its window
// (reduced_sizes[i] values * bytes_per_value bytes, fragmented into
// fixed-size frames) at each traffic epoch; frames travel the tree with one
// transmission at a time per node (FIFO, unbounded queue); a hop costs the
// sender e_elec*k + eps_amp*k*d^2 and the receiver e_elec*k for k bits over
// distance d. Sources are a uniform random subset of non-sink nodes drawn
// from the config seed; source sets for growing num_sources nest. Events
// after sim_end do not happen.
SimReport run_simulation(const Topology& topology, const SimConfig& config,
                         const std::vector<long long>& reduced_sizes,
                         std::vector<HopEvent>* event_log = nullptr);

// Number of scalar values a source transmits per epoch under the configured
// reduction, for windows of n rows and vars_per_observation columns.
long long values_per_source(const SimConfig& config, int vars_per_observation);

enum class SweepAxis { DATA_SIZE, NUM_NODES, NUM_SOURCES };

std::string to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepRun {
  long long axis_value = 0;
  Reduction reduction = Reduction::NONE;
  int replication = 0;
  SimReport report;
};

// One run per (value, reduction, replication) with seed = base seed +
// replication; the same replication shares its topology and source set
// across reductions (and across data sizes / source counts, where the
// deployment is unaffected).
std::vector<SweepRun> sweep_runs(const SimConfig& base, SweepAxis axis,
                                 const std::vector<long long>& values,
                                 const std::vector<Reduction>& reductions,
                                 int replications,
                                 int vars_per_observation = 3);

struct SweepRow {
  long long axis_value = 0;
  Reduction reduction = Reduction::NONE;
  double mean_energy_J = 0.0;
  double ci_energy_J = 0.0;  // 95% normal-approximation half-width
  double mean_delay_s = 0.0;
  double ci_delay_s = 0.0;
  long long packets_generated = 0;
  long long packets_delivered = 0;
};

std::vector<SweepRow> experiment_sweep(const SimConfig& base, SweepAxis axis,
                                       const std::vector<long long>& values,
                                       const std::vector<Reduction>& reductions,
                                       int replications,
                                       int vars_per_observation = 3);

}  // namespace musa
