#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wattprint/ledger/job_log.hpp"

namespace wattprint::ledger {

// Parameters for a reproducible synthetic experiment log.  The defaults
// describe a multi-month grid-search campaign: a few thousand mostly short
// single-GPU jobs, a handful of multi-day runs, and one early crash.
struct SyntheticLogSpec {
    std::uint64_t seed = 11;
    std::size_t job_count = 4789;
    double total_device_hours = 239'942.0;
    double span_days = 172.0;
    std::int64_t window_start_ms = 1'506'902'400'000; // 2017-10-02T00:00:00Z
    double min_job_hours = 0.05;                      // 3 minutes, a crashed job
    double max_job_hours = 216.0;                     // 9 days
    double primary_hardware_share = 0.72;
    std::string primary_hardware = "titan_x";
    std::string secondary_hardware = "m40";
};

// Deterministic for a given spec: identical output on every run and
// platform.  The log is sorted by start time; the first job starts at the
// window start and the longest job ends exactly at the window end, so the
// summarized span equals span_days.  Total device-hours land within a
// fraction of an hour of the target (durations are rounded to seconds).
std::vector<JobRecord> generate_synthetic_log(const SyntheticLogSpec& spec = {});

} // namespace wattprint::ledger
