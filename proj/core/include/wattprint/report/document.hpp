#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wattprint/cost/pricing.hpp"

namespace wattprint::report {

// One labeled result line.  Cells are optional: a row may carry costs
// without energy figures (no public power data) or the other way around.
struct ReportRow {
    std::string label;
    std::string hardware; // e.g. "P100 x8"; may be empty
    std::optional<double> watts;
    std::optional<double> hours;
    std::optional<double> kwh;
    std::optional<double> co2e_lbs;
    std::optional<cost::CostRange> cloud_cost;
    std::optional<double> electricity_usd;
    bool partial = false; // some power domains were unavailable

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// Effective configuration behind every number in the report, so results
// are auditable.
struct Provenance {
    double pue = 1.58;
    double co2e_lbs_per_kwh = 0.954;
    std::string price_source = "defaults";
    std::vector<std::pair<std::string, std::string>> extra; // e.g. presets file, replay source

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ReportDocument {
    std::string title;
    std::vector<ReportRow> rows;
    Provenance provenance;
    std::vector<std::string> notes; // free-form summary lines

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

} // namespace wattprint::report
