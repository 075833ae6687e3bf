#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wattprint::telemetry {

enum class Source { CpuPackage, Dram, Gpu };

std::string_view to_string(Source source);
std::optional<Source> source_from_string(std::string_view name);

// One instantaneous power observation from one hardware domain.
struct PowerSample {
    std::int64_t timestamp_ms = 0;
    Source source = Source::Gpu;
    std::uint32_t device_index = 0;
    double watts = 0.0; // >= 0

    friend bool operator==(const PowerSample&, const PowerSample&) = default;
};

// Energy counter domains exposed by the platform power-capping interface.
enum class EnergyDomain { CpuPackage, Dram };

Source to_source(EnergyDomain domain);
std::string_view to_string(EnergyDomain domain);

// Raw cumulative energy state in microjoules.  The counter wraps at
// 2^counter_width_bits, so consecutive readings must be differenced
// modularly (power_from_energy_delta).
struct EnergyCounterReading {
    std::int64_t timestamp_ms = 0;
    EnergyDomain domain = EnergyDomain::CpuPackage;
    std::uint64_t cumulative_microjoules = 0;
    std::uint32_t counter_width_bits = 32;
};

// Average power over the interval between two readings of the same counter.
// Handles wraparound; throws DataError on mismatched domains or widths, on
// non-positive elapsed time, and on readings exceeding the counter range.
double power_from_energy_delta(const EnergyCounterReading& earlier, const EnergyCounterReading& later);

// Append-ordered sample collection.  Enforces watts >= 0 and non-decreasing
// timestamps per (source, device_index) channel.
class SampleSeries {
public:
    SampleSeries() = default;
    explicit SampleSeries(std::int64_t nominal_interval_ms) : nominal_interval_ms_(nominal_interval_ms) {}

    void append(const PowerSample& sample);

    const std::vector<PowerSample>& samples() const { return samples_; }
    bool empty() const { return samples_.empty(); }
    std::size_t size() const { return samples_.size(); }

    // Advisory sampling interval; not persisted in traces and not part of
    // equality.
    std::int64_t nominal_interval_ms() const { return nominal_interval_ms_; }

    // Wall-clock extent of the observations, zero for fewer than two samples.
    std::int64_t span_ms() const;

    friend bool operator==(const SampleSeries& a, const SampleSeries& b) { return a.samples_ == b.samples_; }

private:
    std::vector<PowerSample> samples_;
    std::int64_t nominal_interval_ms_ = 0;
    std::map<std::pair<Source, std::uint32_t>, std::int64_t> last_timestamp_;
};

// Arithmetic mean of the watts of all samples matching the filters.
// Throws DataError when the selection is empty.
double average_power(const SampleSeries& series,
                     std::optional<Source> source = std::nullopt,
                     std::optional<std::uint32_t> device_index = std::nullopt);

// Distinct device indices observed for a source, in ascending order.
std::vector<std::uint32_t> devices_seen(const SampleSeries& series, Source source);

} // namespace wattprint::telemetry
