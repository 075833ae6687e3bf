#include "wattprint/footprint/model.hpp"

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::footprint {

PowerProfile::PowerProfile(double cpu, double dram, double gpu_each, unsigned count)
    : cpu_watts(cpu), dram_watts(dram), gpu_watts_each(gpu_each), gpu_count(count) {
    if (cpu < 0.0 || dram < 0.0 || gpu_each < 0.0) {
        throw DataError("power draws must be >= 0");
    }
}

void validate(const FootprintConfig& config) {
    if (config.pue < 1.0) {
        throw DataError("pue must be >= 1.0, got " + format_double(config.pue));
    }
    if (config.co2e_lbs_per_kwh <= 0.0) {
        throw DataError("co2e_lbs_per_kwh must be positive, got " + format_double(config.co2e_lbs_per_kwh));
    }
}

double combined_draw(const PowerProfile& profile) {
    const double gpu_total = profile.gpu_count == 0 ? 0.0 : profile.gpu_count * profile.gpu_watts_each;
    return profile.cpu_watts + profile.dram_watts + gpu_total;
}

double energy_kwh(double combined_watts, double hours, const FootprintConfig& config) {
    validate(config);
    if (combined_watts < 0.0) {
        throw DataError("combined watts must be >= 0");
    }
    if (hours < 0.0) {
        throw DataError("hours must be >= 0");
    }
    return config.pue * hours * combined_watts / 1000.0;
}

double co2e_lbs(double kwh, const FootprintConfig& config) {
    validate(config);
    if (kwh < 0.0) {
        throw DataError("kwh must be >= 0");
    }
    return config.co2e_lbs_per_kwh * kwh;
}

FootprintEstimate estimate_footprint(const PowerProfile& profile, double hours, const FootprintConfig& config,
                                     bool partial) {
    FootprintEstimate estimate;
    estimate.combined_watts = combined_draw(profile);
    estimate.hours = hours;
    estimate.kwh_pue = energy_kwh(estimate.combined_watts, hours, config);
    estimate.co2e_lbs = co2e_lbs(estimate.kwh_pue, config);
    estimate.partial = partial;
    return estimate;
}

MeasuredProfile profile_from_series(const telemetry::SampleSeries& series) {
    using telemetry::Source;

    const auto domain_total = [&](Source source) -> std::pair<double, bool> {
        const auto devices = telemetry::devices_seen(series, source);
        double total = 0.0;
        for (const std::uint32_t device : devices) {
            total += telemetry::average_power(series, source, device);
        }
        return {total, !devices.empty()};
    };

    const auto [cpu_total, cpu_seen] = domain_total(Source::CpuPackage);
    const auto [dram_total, dram_seen] = domain_total(Source::Dram);
    const auto [gpu_total, gpu_seen] = domain_total(Source::Gpu);
    const auto gpu_devices = telemetry::devices_seen(series, Source::Gpu);

    MeasuredProfile measured;
    measured.profile.cpu_watts = cpu_total;
    measured.profile.dram_watts = dram_total;
    measured.profile.gpu_count = static_cast<unsigned>(gpu_devices.size());
    measured.profile.gpu_watts_each = gpu_seen ? gpu_total / static_cast<double>(gpu_devices.size()) : 0.0;
    measured.partial = !cpu_seen || !dram_seen;
    return measured;
}

} // namespace wattprint::footprint
