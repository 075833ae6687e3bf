#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "wattprint/report/document.hpp"

namespace wattprint::report {

enum class Format { Text, Csv, JsonLines };

std::optional<Format> format_from_string(std::string_view name);

// Display rounding happens here and nowhere else: kWh, CO2e and dollars to
// the nearest integer, watts to two decimals.  Machine formats carry the
// full-precision values alongside the rounded display values.
std::int64_t display_round(double value);

// Deterministic, locale independent; rendering the same document twice
// yields identical bytes.
std::string render(const ReportDocument& doc, Format format);

// Reads back the CSV render, reconstructing every row value at full
// precision.  Title, provenance and notes are not part of the CSV body.
ReportDocument parse_report_csv(std::istream& in);

} // namespace wattprint::report
