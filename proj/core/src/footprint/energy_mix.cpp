#include "wattprint/footprint/energy_mix.hpp"

#include <fstream>
#include <istream>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::footprint {

const std::vector<EnergyMix>& builtin_energy_mixes() {
    static const std::vector<EnergyMix> mixes = {
        {"China", 22, 3, 65, 4},
        {"Germany", 40, 7, 38, 13},
        {"United States", 17, 35, 27, 19},
        {"Amazon-AWS", 17, 24, 30, 26},
        {"Google", 56, 14, 15, 10},
        {"Microsoft", 32, 23, 31, 10},
    };
    return mixes;
}

namespace {

std::string normalize(std::string_view name) {
    std::string out = to_lower(trim(name));
    for (char& c : out) {
        if (c == ' ') c = '-';
    }
    return out;
}

void check_percentages(const EnergyMix& mix) {
    const double parts[] = {mix.renewable_pct, mix.gas_pct, mix.coal_pct, mix.nuclear_pct};
    double sum = 0.0;
    for (const double p : parts) {
        if (p < 0.0 || p > 100.0) {
            throw DataError("energy mix '" + mix.consumer + "' has a percentage outside [0, 100]");
        }
        sum += p;
    }
    if (sum > 100.0) {
        throw DataError("energy mix '" + mix.consumer + "' sums to more than 100%");
    }
}

} // namespace

const EnergyMix& find_energy_mix(std::string_view consumer, const std::vector<EnergyMix>& mixes) {
    const std::string wanted = normalize(consumer);
    for (const EnergyMix& mix : mixes) {
        if (normalize(mix.consumer) == wanted) return mix;
    }
    std::string names;
    for (const EnergyMix& mix : mixes) {
        if (!names.empty()) names += ", ";
        names += mix.consumer;
    }
    throw DataError("unknown energy-mix consumer '" + std::string(consumer) + "'; valid names: " + names);
}

const EnergyMix& energy_mix(std::string_view consumer) {
    return find_energy_mix(consumer, builtin_energy_mixes());
}

std::vector<EnergyMix> load_energy_mixes(std::istream& in) {
    static constexpr std::string_view kHeader = "consumer,renewable_pct,gas_pct,coal_pct,nuclear_pct";

    std::string line;
    if (!std::getline(in, line) || trim(line) != kHeader) {
        throw DataError("energy-mix file must start with header '" + std::string(kHeader) + "'");
    }

    std::vector<EnergyMix> mixes;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view content = trim(line);
        if (content.empty()) continue;

        const auto fields = split_csv(content);
        if (fields.size() != 5) {
            throw DataError("energy-mix line " + std::to_string(line_number) + ": expected 5 fields");
        }
        EnergyMix mix;
        mix.consumer = std::string(trim(fields[0]));
        double* const targets[] = {&mix.renewable_pct, &mix.gas_pct, &mix.coal_pct, &mix.nuclear_pct};
        for (std::size_t i = 0; i < 4; ++i) {
            const auto value = try_parse_double(trim(fields[i + 1]));
            if (!value) {
                throw DataError("energy-mix line " + std::to_string(line_number) + ": bad percentage '" +
                                fields[i + 1] + "'");
            }
            *targets[i] = *value;
        }
        check_percentages(mix);
        mixes.push_back(std::move(mix));
    }
    if (mixes.empty()) {
        throw DataError("energy-mix file contains no rows");
    }
    return mixes;
}

std::vector<EnergyMix> load_energy_mixes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open energy-mix file '" + path.string() + "'");
    }
    return load_energy_mixes(in);
}

} // namespace wattprint::footprint
