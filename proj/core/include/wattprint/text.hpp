#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wattprint {

// Shortest decimal form that parses back to the same double.  Locale
// independent; this is the one formatting used in traces, CSV and JSON.
std::string format_double(double value);

std::optional<double> try_parse_double(std::string_view text);
std::optional<std::int64_t> try_parse_int64(std::string_view text);
std::optional<std::uint64_t> try_parse_uint64(std::string_view text);

std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);

// Plain comma split, no quoting.  The file formats in this project forbid
// commas inside fields.
std::vector<std::string> split_csv(std::string_view line);

// "YYYY-MM-DDTHH:MM:SSZ", with ".mmm" appended when the value has
// sub-second precision.  UTC only.
std::string format_iso8601(std::int64_t epoch_ms);
std::optional<std::int64_t> try_parse_iso8601(std::string_view text);

} // namespace wattprint
