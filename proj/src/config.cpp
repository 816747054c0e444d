#include "musa/config.hpp"

#include <charconv>
#include <fstream>

namespace musa {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ParseError("config key '" + key + "' has invalid value '" + value + "'");
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);

  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(path + ":" + std::to_string(line_no) + ": empty key");
    entries[key] = value;
  }
  return entries;
}

void apply_sim_config(const std::map<std::string, std::string>& entries,
                      SimConfig& config) {
  for (const auto& [key, value] : entries) {
    if (key == "num_nodes")
      config.num_nodes = parse_number<int>(key, value);
    else if (key == "num_sources")
      config.num_sources = parse_number<int>(key, value);
    else if (key == "data_size_n")
      config.data_size_n = parse_number<int>(key, value);
    else if (key == "reduction")
      config.reduction = reduction_from_string(value);
    else if (key == "radio_range")
      config.radio_range = parse_number<double>(key, value);
    else if (key == "bandwidth")
      config.bandwidth = parse_number<double>(key, value);
    else if (key == "traffic_start")
      config.traffic_start = parse_number<double>(key, value);
    else if (key == "traffic_end")
      config.traffic_end = parse_number<double>(key, value);
    else if (key == "data_rate_period")
      config.data_rate_period = parse_number<double>(key, value);
    else if (key == "sim_end")
      config.sim_end = parse_number<double>(key, value);
    else if (key == "initial_energy")
      config.initial_energy = parse_number<double>(key, value);
    else if (key == "bytes_per_value")
      config.bytes_per_value = parse_number<int>(key, value);
    else if (key == "payload_bytes_per_packet")
      config.payload_bytes_per_packet = parse_number<int>(key, value);
    else if (key == "e_elec")
      config.e_elec = parse_number<double>(key, value);
    else if (key == "eps_amp")
      config.eps_amp = parse_number<double>(key, value);
    else if (key == "hop_processing_delay")
      config.hop_processing_delay = parse_number<double>(key, value);
    else if (key == "seed")
      config.seed = parse_number<uint64_t>(key, value);
    else
      throw ParseError("unknown config key '" + key + "'");
  }
}

}  // namespace musa
