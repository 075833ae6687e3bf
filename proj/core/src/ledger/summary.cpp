#include "wattprint/ledger/summary.hpp"

#include <algorithm>

#include "wattprint/error.hpp"

namespace wattprint::ledger {

double ExperimentSummary::span_days() const {
    return static_cast<double>(window_end_ms - window_start_ms) / 86'400'000.0;
}

double ExperimentSummary::avg_job_hours() const {
    return job_count == 0 ? 0.0 : total_wall_hours / static_cast<double>(job_count);
}

double ExperimentSummary::avg_concurrent_devices() const {
    const double span_hours = span_days() * 24.0;
    return span_hours <= 0.0 ? 0.0 : total_device_hours / span_hours;
}

std::map<std::string, double> ExperimentSummary::hardware_share() const {
    std::map<std::string, double> shares;
    if (total_device_hours <= 0.0) return shares;
    for (const auto& [kind, hours] : device_hours_by_hardware) {
        shares[kind] = hours / total_device_hours;
    }
    return shares;
}

ExperimentSummary summarize(std::span<const JobRecord> jobs) {
    if (jobs.empty()) {
        throw DataError("cannot summarize an empty job list");
    }

    ExperimentSummary summary;
    summary.job_count = jobs.size();
    summary.window_start_ms = jobs.front().start_ms;
    summary.window_end_ms = jobs.front().end_ms;
    summary.min_job_hours = jobs.front().wall_hours();
    summary.max_job_hours = summary.min_job_hours;

    for (const JobRecord& job : jobs) {
        const double wall = job.wall_hours();
        summary.window_start_ms = std::min(summary.window_start_ms, job.start_ms);
        summary.window_end_ms = std::max(summary.window_end_ms, job.end_ms);
        summary.total_wall_hours += wall;
        summary.total_device_hours += job.device_hours();
        summary.min_job_hours = std::min(summary.min_job_hours, wall);
        summary.max_job_hours = std::max(summary.max_job_hours, wall);
        summary.device_hours_by_hardware[job.hardware] += job.device_hours();
    }
    return summary;
}

ExperimentSummary merge(const ExperimentSummary& a, const ExperimentSummary& b) {
    if (a.job_count == 0) return b;
    if (b.job_count == 0) return a;

    ExperimentSummary merged;
    merged.job_count = a.job_count + b.job_count;
    merged.window_start_ms = std::min(a.window_start_ms, b.window_start_ms);
    merged.window_end_ms = std::max(a.window_end_ms, b.window_end_ms);
    merged.total_device_hours = a.total_device_hours + b.total_device_hours;
    merged.total_wall_hours = a.total_wall_hours + b.total_wall_hours;
    merged.min_job_hours = std::min(a.min_job_hours, b.min_job_hours);
    merged.max_job_hours = std::max(a.max_job_hours, b.max_job_hours);
    merged.device_hours_by_hardware = a.device_hours_by_hardware;
    for (const auto& [kind, hours] : b.device_hours_by_hardware) {
        merged.device_hours_by_hardware[kind] += hours;
    }
    return merged;
}

ScenarioCosts scenario_costs(double device_hours, double avg_watts, std::string_view proxy_hardware,
                             const cost::PriceSheet& sheet, const footprint::FootprintConfig& config) {
    if (device_hours < 0.0 || avg_watts < 0.0) {
        throw DataError("scenario inputs must be >= 0");
    }

    ScenarioCosts costs;
    costs.device_hours = device_hours;
    // The hours are device-hours, so the unit count is already folded in.
    costs.cloud = cost::cloud_cost_range(proxy_hardware, 1, device_hours, sheet);
    costs.kwh_pue = footprint::energy_kwh(avg_watts, device_hours, config);
    costs.co2e_lbs = footprint::co2e_lbs(costs.kwh_pue, config);
    costs.electricity_usd = cost::electricity_cost(costs.kwh_pue, sheet);
    return costs;
}

double weighted_avg_watts(std::span<const JobRecord> jobs, double default_watts) {
    bool any_explicit = false;
    double weighted = 0.0;
    double total_hours = 0.0;
    for (const JobRecord& job : jobs) {
        const double hours = job.device_hours();
        any_explicit = any_explicit || job.avg_total_watts.has_value();
        weighted += hours * job.avg_total_watts.value_or(default_watts);
        total_hours += hours;
    }
    if (!any_explicit || total_hours <= 0.0) return default_watts;
    return weighted / total_hours;
}

} // namespace wattprint::ledger
