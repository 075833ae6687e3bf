#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wattprint/footprint/model.hpp"

namespace wattprint {

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line_number = 0;
};

// `key = value` lines; '#' starts a comment, blank lines are skipped.
std::vector<KeyValue> parse_key_values(std::istream& in);

// Config files know the keys `pue` and `co2e_lbs_per_kwh`; anything else
// is rejected.  Absent keys keep the base values.
footprint::FootprintConfig load_footprint_config(std::istream& in, footprint::FootprintConfig base = {});
footprint::FootprintConfig load_footprint_config(const std::filesystem::path& path,
                                                 footprint::FootprintConfig base = {});

} // namespace wattprint
