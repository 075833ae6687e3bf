#include "wattprint/telemetry/sample.hpp"

#include <algorithm>
#include <set>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::telemetry {

std::string_view to_string(Source source) {
    switch (source) {
        case Source::CpuPackage: return "cpu-package";
        case Source::Dram: return "dram";
        case Source::Gpu: return "gpu";
    }
    return "unknown";
}

std::optional<Source> source_from_string(std::string_view name) {
    if (name == "cpu-package") return Source::CpuPackage;
    if (name == "dram") return Source::Dram;
    if (name == "gpu") return Source::Gpu;
    return std::nullopt;
}

Source to_source(EnergyDomain domain) {
    return domain == EnergyDomain::CpuPackage ? Source::CpuPackage : Source::Dram;
}

std::string_view to_string(EnergyDomain domain) {
    return to_string(to_source(domain));
}

double power_from_energy_delta(const EnergyCounterReading& earlier, const EnergyCounterReading& later) {
    if (earlier.domain != later.domain) {
        throw DataError("energy delta across mismatched domains");
    }
    if (earlier.counter_width_bits != later.counter_width_bits) {
        throw DataError("energy delta across mismatched counter widths");
    }
    if (later.counter_width_bits == 0 || later.counter_width_bits > 64) {
        throw DataError("counter width must be in [1, 64], got " + std::to_string(later.counter_width_bits));
    }
    if (later.timestamp_ms <= earlier.timestamp_ms) {
        throw DataError("energy delta requires strictly increasing timestamps");
    }

    // Values are reduced mod 2^width, so the delta is unchanged by whole
    // counter wraps on both sides.
    std::uint64_t delta_uj = later.cumulative_microjoules - earlier.cumulative_microjoules;
    if (later.counter_width_bits < 64) {
        delta_uj &= (std::uint64_t{1} << later.counter_width_bits) - 1;
    }
    const double elapsed_s = static_cast<double>(later.timestamp_ms - earlier.timestamp_ms) / 1000.0;
    return static_cast<double>(delta_uj) / elapsed_s / 1e6;
}

void SampleSeries::append(const PowerSample& sample) {
    if (sample.watts < 0.0) {
        throw DataError("negative watts value " + format_double(sample.watts));
    }
    const auto channel = std::make_pair(sample.source, sample.device_index);
    const auto it = last_timestamp_.find(channel);
    if (it != last_timestamp_.end() && sample.timestamp_ms < it->second) {
        throw DataError("non-monotonic timestamp for channel " + std::string(to_string(sample.source)) + "/" +
                        std::to_string(sample.device_index));
    }
    last_timestamp_[channel] = sample.timestamp_ms;
    samples_.push_back(sample);
}

std::int64_t SampleSeries::span_ms() const {
    if (samples_.size() < 2) return 0;
    auto [min_it, max_it] = std::minmax_element(
        samples_.begin(), samples_.end(),
        [](const PowerSample& a, const PowerSample& b) { return a.timestamp_ms < b.timestamp_ms; });
    return max_it->timestamp_ms - min_it->timestamp_ms;
}

double average_power(const SampleSeries& series, std::optional<Source> source,
                     std::optional<std::uint32_t> device_index) {
    double first = 0.0;
    double deviation_sum = 0.0;
    double lowest = 0.0;
    double highest = 0.0;
    std::size_t count = 0;
    for (const PowerSample& sample : series.samples()) {
        if (source && sample.source != *source) continue;
        if (device_index && sample.device_index != *device_index) continue;
        if (count == 0) {
            first = lowest = highest = sample.watts;
        } else {
            deviation_sum += sample.watts - first;
            lowest = std::min(lowest, sample.watts);
            highest = std::max(highest, sample.watts);
        }
        ++count;
    }
    if (count == 0) {
        throw DataError("no samples match the requested selection");
    }
    // Summing deviations from the first sample keeps the mean of a constant
    // series exactly equal to that constant; the clamp keeps rounding from
    // ever leaving the observed range.
    const double mean = first + deviation_sum / static_cast<double>(count);
    return std::clamp(mean, lowest, highest);
}

std::vector<std::uint32_t> devices_seen(const SampleSeries& series, Source source) {
    std::set<std::uint32_t> devices;
    for (const PowerSample& sample : series.samples()) {
        if (sample.source == source) devices.insert(sample.device_index);
    }
    return {devices.begin(), devices.end()};
}

} // namespace wattprint::telemetry
