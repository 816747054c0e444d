#pragma once

#include <map>
#include <string>

#include "musa/netsim.hpp"

namespace musa {

// Flat `key = value` files with '#' comments and blank lines.
std::map<std::string, std::string> parse_flat_config(const std::string& path);

// Applies recognized keys (the SimConfig field names) onto a config; unknown
// keys or unparsable values raise ParseError.
void apply_sim_config(const std::map<std::string, std::string>& entries,
                      SimConfig& config);

}  // namespace musa
