#pragma once

#include <map>
#include <span>
#include <string>

#include "wattprint/cost/pricing.hpp"
#include "wattprint/footprint/model.hpp"
#include "wattprint/ledger/job_log.hpp"

namespace wattprint::ledger {

// Combined draw assumed for jobs whose log line carries no watts figure.
// Chosen so that electricity cost over a multi-month experiment log matches
// published accounting; override with the CLI --watts flag.
inline constexpr double kDefaultJobWatts = 217.0;

// Aggregate view of an experiment log.  Carries absolute window bounds and
// raw totals so that summaries of disjoint shards merge associatively.
struct ExperimentSummary {
    std::size_t job_count = 0;
    std::int64_t window_start_ms = 0; // min job start
    std::int64_t window_end_ms = 0;   // max job end
    double total_device_hours = 0.0;
    double total_wall_hours = 0.0;
    double min_job_hours = 0.0;
    double max_job_hours = 0.0;
    std::map<std::string, double> device_hours_by_hardware;

    double span_days() const;
    double avg_job_hours() const;
    // Device-hours divided by the wall-clock window; the sustained number
    // of devices the log kept busy.
    double avg_concurrent_devices() const;
    // Fraction of device-hours per hardware kind.
    std::map<std::string, double> hardware_share() const;
};

// Throws DataError on an empty list.
ExperimentSummary summarize(std::span<const JobRecord> jobs);

// merge(summarize(A), summarize(B)) == summarize(A ∪ B) for disjoint A, B.
ExperimentSummary merge(const ExperimentSummary& a, const ExperimentSummary& b);

// One what-if row: run `device_hours` of compute at `avg_watts`, price the
// hours at a proxy hardware kind, and cost the PUE-scaled energy.
struct ScenarioCosts {
    double device_hours = 0.0;
    double kwh_pue = 0.0;
    double co2e_lbs = 0.0;
    cost::CostRange cloud;
    double electricity_usd = 0.0;
};

ScenarioCosts scenario_costs(double device_hours, double avg_watts, std::string_view proxy_hardware,
                             const cost::PriceSheet& sheet, const footprint::FootprintConfig& config);

// Device-hour-weighted average draw over a log, filling jobs without a
// watts figure with `default_watts`.
double weighted_avg_watts(std::span<const JobRecord> jobs, double default_watts = kDefaultJobWatts);

} // namespace wattprint::ledger
