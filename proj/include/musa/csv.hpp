#pragma once

#include <string>

#include "musa/sensor_window.hpp"

namespace musa {

// Comma-separated, '.' decimal point, mandatory header row, UTF-8.
SensorWindow read_window_csv(const std::string& path);
void write_window_csv(const std::string& path, const SensorWindow& w);

// Atomically replaces `path` with `contents` (write to a temp file, then
// rename), so failed commands never leave partial output behind.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace musa
