#pragma once

#include <filesystem>
#include <iosfwd>

#include "wattprint/telemetry/sample.hpp"

namespace wattprint::telemetry {

// Trace files are UTF-8 CSV with LF line endings:
//
//   timestamp_ms,source,device_index,watts
//   1000,gpu,0,231.45
//
// Sources are exactly cpu-package, dram or gpu.  Watts are written in
// shortest round-trip form, so save(load(f)) is byte-identical for a
// canonically formatted file.

inline constexpr std::string_view kTraceHeader = "timestamp_ms,source,device_index,watts";

SampleSeries load_trace(std::istream& in);
SampleSeries load_trace(const std::filesystem::path& path);

void save_trace(const SampleSeries& series, std::ostream& out);
void save_trace(const SampleSeries& series, const std::filesystem::path& path);

} // namespace wattprint::telemetry
