#pragma once

#include "wattprint/telemetry/sample.hpp"

namespace wattprint::footprint {

// Average draws feeding the energy model.  CPU and DRAM are totals across
// all sockets; the GPU figure is the average draw of a single device.
struct PowerProfile {
    PowerProfile() = default;
    PowerProfile(double cpu_watts, double dram_watts, double gpu_watts_each, unsigned gpu_count);

    double cpu_watts = 0.0;
    double dram_watts = 0.0;
    double gpu_watts_each = 0.0; // ignored when gpu_count == 0
    unsigned gpu_count = 0;
};

struct FootprintConfig {
    double pue = 1.58;              // total facility energy / IT energy, >= 1
    double co2e_lbs_per_kwh = 0.954; // U.S. grid-average emissions factor
};

void validate(const FootprintConfig& config);

struct FootprintEstimate {
    double combined_watts = 0.0;
    double hours = 0.0;
    double kwh_pue = 0.0;
    double co2e_lbs = 0.0;
    bool partial = false; // some power domains were unavailable
};

// cpu + dram + gpu_count * gpu_watts_each.
double combined_draw(const PowerProfile& profile);

// pue * hours * combined_watts / 1000, full precision.  Reporting layers
// round to the nearest integer.
double energy_kwh(double combined_watts, double hours, const FootprintConfig& config);

double co2e_lbs(double kwh, const FootprintConfig& config);

FootprintEstimate estimate_footprint(const PowerProfile& profile, double hours, const FootprintConfig& config,
                                     bool partial = false);

// Reduces a measured series to model inputs: per-device means, summed
// across sockets for CPU/DRAM.  partial is set when the CPU package or
// DRAM domain produced no samples.
struct MeasuredProfile {
    PowerProfile profile;
    bool partial = false;
};

MeasuredProfile profile_from_series(const telemetry::SampleSeries& series);

} // namespace wattprint::footprint
