#include "wattprint/ledger/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wattprint/error.hpp"

namespace wattprint::ledger {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// Together with sticking to IEEE basic operations below, this keeps the
// generated log byte-identical across platforms and standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::vector<JobRecord> generate_synthetic_log(const SyntheticLogSpec& spec) {
    if (spec.job_count < 3) {
        throw DataError("synthetic log needs at least 3 jobs");
    }
    if (spec.min_job_hours <= 0.0 || spec.max_job_hours <= spec.min_job_hours) {
        throw DataError("synthetic log needs 0 < min_job_hours < max_job_hours");
    }
    if (spec.max_job_hours > spec.span_days * 24.0) {
        throw DataError("max_job_hours cannot exceed the log window");
    }
    if (spec.primary_hardware_share < 0.0 || spec.primary_hardware_share > 1.0) {
        throw DataError("hardware share must be in [0, 1]");
    }

    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.job_count;
    const std::size_t core_count = n - 2; // two anchor jobs pin the min and max durations

    const double core_target = spec.total_device_hours - spec.min_job_hours - spec.max_job_hours;
    if (core_target < static_cast<double>(core_count) * spec.min_job_hours ||
        core_target > static_cast<double>(core_count) * spec.max_job_hours) {
        throw DataError("total_device_hours is not reachable with the requested job count and bounds");
    }

    // Right-skewed core durations: many short grid-search jobs, few long
    // runs.
    std::vector<double> hours(n);
    for (std::size_t i = 0; i < core_count; ++i) {
        const double u = uniform01(rng);
        hours[i] = spec.min_job_hours + (spec.max_job_hours - spec.min_job_hours) * (u * u * u);
    }
    hours[n - 2] = spec.min_job_hours;
    hours[n - 1] = spec.max_job_hours;

    // Rescale the core jobs until they sum to the target, clamping anything
    // the scale pushes past the duration bounds and redistributing over the
    // rest.  Converges in a couple of passes for any reachable target.
    std::vector<bool> pinned(core_count, false);
    bool exact = false;
    for (int pass = 0; pass < 32 && !exact; ++pass) {
        double pinned_sum = 0.0;
        double free_sum = 0.0;
        for (std::size_t i = 0; i < core_count; ++i) {
            (pinned[i] ? pinned_sum : free_sum) += hours[i];
        }
        if (free_sum <= 0.0) break;
        const double scale = (core_target - pinned_sum) / free_sum;
        if (scale <= 0.0) break;
        exact = true;
        for (std::size_t i = 0; i < core_count; ++i) {
            if (pinned[i]) continue;
            hours[i] *= scale;
            if (hours[i] < spec.min_job_hours) {
                hours[i] = spec.min_job_hours;
                pinned[i] = true;
                exact = false;
            } else if (hours[i] > spec.max_job_hours) {
                hours[i] = spec.max_job_hours;
                pinned[i] = true;
                exact = false;
            }
        }
    }
    double core_sum = 0.0;
    for (std::size_t i = 0; i < core_count; ++i) core_sum += hours[i];
    if (std::abs(core_sum - core_target) > std::max(1.0, 0.0005 * core_target)) {
        throw DataError("synthetic log parameters are infeasible (could not reach the duration total)");
    }

    const std::int64_t span_s = static_cast<std::int64_t>(std::llround(spec.span_days * 86'400.0));
    std::vector<std::int64_t> start_s(n);
    std::vector<std::int64_t> dur_s(n);
    for (std::size_t i = 0; i < n; ++i) {
        dur_s[i] = std::max<std::int64_t>(1, std::llround(hours[i] * 3600.0));
    }
    start_s[0] = 0; // pins the window start
    for (std::size_t i = 1; i < n - 1; ++i) {
        start_s[i] = static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(span_s - dur_s[i]));
    }
    start_s[n - 1] = span_s - dur_s[n - 1]; // the longest job pins the window end

    std::vector<JobRecord> jobs(n);
    for (std::size_t i = 0; i < n; ++i) {
        jobs[i].start_ms = spec.window_start_ms + start_s[i] * 1000;
        jobs[i].end_ms = jobs[i].start_ms + dur_s[i] * 1000;
        jobs[i].hardware = uniform01(rng) < spec.primary_hardware_share ? spec.primary_hardware
                                                                        : spec.secondary_hardware;
        jobs[i].device_count = 1;
    }

    std::sort(jobs.begin(), jobs.end(), [](const JobRecord& a, const JobRecord& b) {
        return std::tie(a.start_ms, a.end_ms) < std::tie(b.start_ms, b.end_ms);
    });

    char id[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(id, sizeof id, "job-%04zu", i + 1);
        jobs[i].job_id = id;
    }
    return jobs;
}

} // namespace wattprint::ledger
