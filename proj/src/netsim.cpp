#include "musa/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <random>

#include "musa/sampler.hpp"

namespace musa {

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::NONE:
      return "NONE";
    case Reduction::HALF:
      return "HALF";
    case Reduction::LOG2:
      return "LOG2";
  }
  return "NONE";
}

Reduction reduction_from_string(const std::string& name) {
  if (name == "NONE" || name == "none") return Reduction::NONE;
  if (name == "HALF" || name == "half") return Reduction::HALF;
  if (name == "LOG2" || name == "log2") return Reduction::LOG2;
  throw PreconditionError("unknown reduction: " + name);
}

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::DATA_SIZE:
      return "data_size";
    case SweepAxis::NUM_NODES:
      return "num_nodes";
    case SweepAxis::NUM_SOURCES:
      return "num_sources";
  }
  return "data_size";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "data_size" || name == "data-size") return SweepAxis::DATA_SIZE;
  if (name == "num_nodes" || name == "num-nodes") return SweepAxis::NUM_NODES;
  if (name == "num_sources" || name == "num-sources")
    return SweepAxis::NUM_SOURCES;
  throw PreconditionError("unknown sweep axis: " + name);
}

double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void SimConfig::validate() const {
  if (num_nodes < 1) throw PreconditionError("num_nodes must be >= 1");
  if (num_sources < 0 || num_sources > num_nodes)
    throw PreconditionError("num_sources must lie in [0, num_nodes]");
  if (data_size_n < 2) throw PreconditionError("data_size_n must be >= 2");
  if (!(radio_range > 0.0) || !(bandwidth > 0.0) || !(initial_energy > 0.0) ||
      !(data_rate_period > 0.0) || bytes_per_value < 1 ||
      payload_bytes_per_packet < 1 || !(e_elec > 0.0) || !(eps_amp > 0.0) ||
      hop_processing_delay < 0.0)
    throw PreconditionError("all physical simulation quantities must be positive");
  if (!(traffic_start < traffic_end) || !(traffic_end <= sim_end))
    throw PreconditionError("need traffic_start < traffic_end <= sim_end");
}

double area_side(int num_nodes, double radio_range) {
  if (num_nodes < 1 || !(radio_range > 0.0))
    throw PreconditionError("area side needs positive node count and range");
  constexpr double kDensity = 8.4791;  // nodes per radio disk
  const double pi = std::acos(-1.0);
  return std::sqrt(pi * radio_range * radio_range * num_nodes / kDensity);
}

bool build_topology(const std::vector<Point2>& positions, double radio_range,
                    Topology& out) {
  const int total = static_cast<int>(positions.size());
  if (total < 1 || !(radio_range > 0.0))
    throw PreconditionError("topology needs at least the sink and a positive range");

  out.node_positions = positions;
  out.radio_range = radio_range;
  out.adjacency.assign(static_cast<size_t>(total), {});
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j)
      if (distance(positions[static_cast<size_t>(i)],
                   positions[static_cast<size_t>(j)]) <= radio_range) {
        out.adjacency[static_cast<size_t>(i)].push_back(j);
        out.adjacency[static_cast<size_t>(j)].push_back(i);
      }

  out.hops.assign(static_cast<size_t>(total), -1);
  out.parent.assign(static_cast<size_t>(total), -1);
  out.hops[0] = 0;
  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (int v : out.adjacency[static_cast<size_t>(u)])
      if (out.hops[static_cast<size_t>(v)] < 0) {
        out.hops[static_cast<size_t>(v)] = out.hops[static_cast<size_t>(u)] + 1;
        frontier.push_back(v);
      }
  }
  for (int v = 1; v < total; ++v) {
    if (out.hops[static_cast<size_t>(v)] < 0) return false;  // disconnected
    // lowest-id neighbor one hop closer
    for (int u : out.adjacency[static_cast<size_t>(v)])
      if (out.hops[static_cast<size_t>(u)] ==
          out.hops[static_cast<size_t>(v)] - 1) {
        out.parent[static_cast<size_t>(v)] = u;
        break;
      }
  }
  return true;
}

Topology deploy(const SimConfig& config) {
  config.validate();
  const double side = area_side(config.num_nodes, config.radio_range);
  constexpr int kMaxRedraws = 100;

  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const uint64_t seed = config.seed + static_cast<uint64_t>(attempt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, side);

    std::vector<Point2> positions(static_cast<size_t>(config.num_nodes) + 1);
    positions[0] = {0.0, 0.0};  // sink
    for (int i = 1; i <= config.num_nodes; ++i) {
      const double x = coord(rng);
      const double y = coord(rng);
      positions[static_cast<size_t>(i)] = {x, y};
    }

    Topology topo;
    if (build_topology(positions, config.radio_range, topo)) {
      topo.area_side = side;
      topo.seed_used = seed;
      return topo;
    }
  }
  throw DeploymentError("no connected deployment found in " +
                        std::to_string(kMaxRedraws) + " redraws (seed " +
                        std::to_string(config.seed) + ", nodes " +
                        std::to_string(config.num_nodes) + ")");
}

namespace {

// Ascending node ids of the first num_sources entries of a seed-determined
// permutation, so source sets nest as num_sources grows.
std::vector<int> pick_sources(const SimConfig& config, int num_nodes) {
  std::vector<int> ids(static_cast<size_t>(num_nodes));
  std::iota(ids.begin(), ids.end(), 1);
  std::seed_seq seq{static_cast<uint32_t>(config.seed),
                    static_cast<uint32_t>(config.seed >> 32), 0x736f7263u};
  std::mt19937_64 rng(seq);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(static_cast<size_t>(config.num_sources));
  std::sort(ids.begin(), ids.end());
  return ids;
}

struct Frame {
  double gen_time = 0.0;
};

enum class EventKind { ARRIVAL, SERVICE_END };

struct Event {
  double time = 0.0;
  uint64_t seq = 0;
  EventKind kind = EventKind::ARRIVAL;
  int node = 0;
  Frame frame;

  bool operator>(const Event& other) const {
    if (time != other.time) return time > other.time;
    return seq > other.seq;
  }
};

}  // namespace

long long values_per_source(const SimConfig& config, int vars_per_observation) {
  if (vars_per_observation < 1)
    throw PreconditionError("need at least one variable per observation");
  long long rows = config.data_size_n;
  switch (config.reduction) {
    case Reduction::NONE:
      break;
    case Reduction::HALF:
      rows = reduction_level(rows, ReductionLevel::HALF);
      break;
    case Reduction::LOG2:
      rows = reduction_level(rows, ReductionLevel::LOG2);
      break;
  }
  return rows * vars_per_observation;
}

SimReport run_simulation(const Topology& topology, const SimConfig& config,
                         const std::vector<long long>& reduced_sizes,
                         std::vector<HopEvent>* event_log) {
  config.validate();
  const int total_nodes = static_cast<int>(topology.node_positions.size());
  if (total_nodes != config.num_nodes + 1)
    throw PreconditionError("topology does not match num_nodes");
  if (static_cast<int>(reduced_sizes.size()) != config.num_sources)
    throw PreconditionError("need one value count per source");

  const std::vector<int> sources = pick_sources(config, config.num_nodes);
  const long long frame_bits =
      static_cast<long long>(config.payload_bytes_per_packet) * 8;
  const double service_time =
      static_cast<double>(frame_bits) / config.bandwidth +
      config.hop_processing_delay;

  SimReport report;
  report.per_node_energy_J.assign(static_cast<size_t>(total_nodes), 0.0);

  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
  uint64_t seq = 0;

  // Window emissions: every source enqueues its frames at each epoch.
  for (int epoch = 0;; ++epoch) {
    const double t = config.traffic_start + epoch * config.data_rate_period;
    if (t >= config.traffic_end) break;
    for (size_t s = 0; s < sources.size(); ++s) {
      const long long bytes = reduced_sizes[s] * config.bytes_per_value;
      const long long frames =
          (bytes + config.payload_bytes_per_packet - 1) /
          config.payload_bytes_per_packet;
      for (long long f = 0; f < frames; ++f) {
        events.push({t, seq++, EventKind::ARRIVAL, sources[s], Frame{t}});
        ++report.packets_generated;
      }
    }
  }

  std::vector<std::deque<Frame>> queues(static_cast<size_t>(total_nodes));
  std::vector<bool> busy(static_cast<size_t>(total_nodes), false);
  double delay_sum = 0.0;

  auto start_service = [&](int node, double now) {
    busy[static_cast<size_t>(node)] = true;
    events.push({now + service_time, seq++, EventKind::SERVICE_END, node,
                 queues[static_cast<size_t>(node)].front()});
  };

  auto handle_arrival = [&](int node, const Frame& frame, double now) {
    if (node == 0) {  // sink
      ++report.packets_delivered;
      delay_sum += now - frame.gen_time;
      return;
    }
    queues[static_cast<size_t>(node)].push_back(frame);
    if (!busy[static_cast<size_t>(node)]) start_service(node, now);
  };

  while (!events.empty()) {
    const Event ev = events.top();
    if (ev.time > config.sim_end) break;
    events.pop();

    if (ev.kind == EventKind::ARRIVAL) {
      handle_arrival(ev.node, ev.frame, ev.time);
      continue;
    }

    // SERVICE_END: the queue head finished its hop toward the parent.
    const int node = ev.node;
    const Frame frame = queues[static_cast<size_t>(node)].front();
    queues[static_cast<size_t>(node)].pop_front();
    const int next = topology.parent[static_cast<size_t>(node)];
    const double d = distance(topology.node_positions[static_cast<size_t>(node)],
                              topology.node_positions[static_cast<size_t>(next)]);
    const double k = static_cast<double>(frame_bits);
    const double sender_energy = config.e_elec * k + config.eps_amp * k * d * d;
    const double receiver_energy = config.e_elec * k;
    report.per_node_energy_J[static_cast<size_t>(node)] += sender_energy;
    report.per_node_energy_J[static_cast<size_t>(next)] += receiver_energy;
    report.total_energy_J += sender_energy + receiver_energy;
    if (event_log)
      event_log->push_back({ev.time, node, next, frame_bits, d});

    handle_arrival(next, frame, ev.time);
    if (!queues[static_cast<size_t>(node)].empty())
      start_service(node, ev.time);
    else
      busy[static_cast<size_t>(node)] = false;
  }

  report.mean_delay_s =
      report.packets_delivered > 0
          ? delay_sum / static_cast<double>(report.packets_delivered)
          : 0.0;
  return report;
}

std::vector<SweepRun> sweep_runs(const SimConfig& base, SweepAxis axis,
                                 const std::vector<long long>& values,
                                 const std::vector<Reduction>& reductions,
                                 int replications, int vars_per_observation) {
  if (values.empty()) throw PreconditionError("sweep needs at least one value");
  if (reductions.empty())
    throw PreconditionError("sweep needs at least one reduction");
  if (replications < 1)
    throw PreconditionError("sweep needs at least one replication");

  std::vector<SweepRun> runs;
  runs.reserve(values.size() * reductions.size() *
               static_cast<size_t>(replications));

  for (int rep = 0; rep < replications; ++rep) {
    for (long long value : values) {
      SimConfig cfg = base;
      cfg.seed = base.seed + static_cast<uint64_t>(rep);
      switch (axis) {
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
      for (Reduction reduction : reductions) {
        cfg.reduction = reduction;
        const std::vector<long long> sizes(
            static_cast<size_t>(cfg.num_sources),
            values_per_source(cfg, vars_per_observation));
        SweepRun run;
        run.axis_value = value;
        run.reduction = reduction;
        run.replication = rep;
        run.report = run_simulation(topo, cfg, sizes);
        runs.push_back(std::move(run));
      }
    }
  }
  return runs;
}

std::vector<SweepRow> experiment_sweep(const SimConfig& base, SweepAxis axis,
                                       const std::vector<long long>& values,
                                       const std::vector<Reduction>& reductions,
                                       int replications,
                                       int vars_per_observation) {
  const std::vector<SweepRun> runs = sweep_runs(
      base, axis, values, reductions, replications, vars_per_observation);

  std::vector<SweepRow> rows;
  for (long long value : values) {
    for (Reduction reduction : reductions) {
      std::vector<double> energies, delays;
      long long generated = 0, delivered = 0;
      for (const SweepRun& run : runs)
        if (run.axis_value == value && run.reduction == reduction) {
          energies.push_back(run.report.total_energy_J);
          delays.push_back(run.report.mean_delay_s);
          generated = run.report.packets_generated;
          delivered = run.report.packets_delivered;
        }

      auto mean_ci = [](const std::vector<double>& xs) {
        const double n = static_cast<double>(xs.size());
        const double mean =
            std::accumulate(xs.begin(), xs.end(), 0.0) / n;
        if (xs.size() < 2) return std::pair<double, double>{mean, 0.0};
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        return std::pair<double, double>{mean, 1.96 * sd / std::sqrt(n)};
      };

      SweepRow row;
      row.axis_value = value;
      row.reduction = reduction;
      std::tie(row.mean_energy_J, row.ci_energy_J) = mean_ci(energies);
      std::tie(row.mean_delay_s, row.ci_delay_s) = mean_ci(delays);
      row.packets_generated = generated;
      row.packets_delivered = delivered;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace musa
