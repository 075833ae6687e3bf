#include "wattprint/config.hpp"

#include <fstream>
#include <istream>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint {

std::vector<KeyValue> parse_key_values(std::istream& in) {
    std::vector<KeyValue> pairs;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string_view content = trim(line);
        if (content.empty()) continue;

        const std::size_t eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw DataError("line " + std::to_string(line_number) + ": expected 'key = value', got '" +
                            std::string(content) + "'");
        }
        const std::string_view key = trim(content.substr(0, eq));
        const std::string_view value = trim(content.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw DataError("line " + std::to_string(line_number) + ": empty key or value");
        }
        pairs.push_back({std::string(key), std::string(value), line_number});
    }
    return pairs;
}

footprint::FootprintConfig load_footprint_config(std::istream& in, footprint::FootprintConfig base) {
    for (const auto& [key, value, line_number] : parse_key_values(in)) {
        const auto number = try_parse_double(value);
        if (!number) {
            throw DataError("config line " + std::to_string(line_number) + ": bad value '" + value + "'");
        }
        if (key == "pue") {
            base.pue = *number;
        } else if (key == "co2e_lbs_per_kwh") {
            base.co2e_lbs_per_kwh = *number;
        } else {
            throw DataError("config line " + std::to_string(line_number) + ": unknown key '" + key +
                            "' (expected pue or co2e_lbs_per_kwh)");
        }
    }
    footprint::validate(base);
    return base;
}

footprint::FootprintConfig load_footprint_config(const std::filesystem::path& path,
                                                 footprint::FootprintConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open config file '" + path.string() + "'");
    }
    return load_footprint_config(in, base);
}

} // namespace wattprint
