#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wattprint::footprint {

// Electricity source breakdown for one consumer (country or cloud
// provider).  Percentages may sum to less than 100; the remainder is
// unlisted "other" generation.
struct EnergyMix {
    std::string consumer;
    double renewable_pct = 0.0;
    double gas_pct = 0.0;
    double coal_pct = 0.0;
    double nuclear_pct = 0.0;

    friend bool operator==(const EnergyMix&, const EnergyMix&) = default;
};

// Reference rows bundled with the library.
const std::vector<EnergyMix>& builtin_energy_mixes();

// Lookup is case-insensitive and treats spaces and hyphens alike, so
// "united-states" finds "United States".  Throws DataError listing the
// valid names when the consumer is unknown.
const EnergyMix& find_energy_mix(std::string_view consumer, const std::vector<EnergyMix>& mixes);
const EnergyMix& energy_mix(std::string_view consumer);

// CSV with header consumer,renewable_pct,gas_pct,coal_pct,nuclear_pct.
std::vector<EnergyMix> load_energy_mixes(std::istream& in);
std::vector<EnergyMix> load_energy_mixes(const std::filesystem::path& path);

} // namespace wattprint::footprint
