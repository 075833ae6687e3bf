#include "wattprint/cost/pricing.hpp"

#include <fstream>
#include <istream>

#include "wattprint/config.hpp"
#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::cost {

PriceSheet PriceSheet::defaults() {
    PriceSheet sheet;
    // U.S. preemptible / on-demand GPU rates; TPU per-chip rates chosen so
    // device-hours times rate reproduces published cost ranges.
    sheet.set_rate("P100", {0.43, 1.46});
    sheet.set_rate("V100", {0.74, 2.48});
    sheet.set_rate("TPUv2", {1.35, 4.50});
    sheet.set_rate("TPUv3", {2.40, 8.00});
    return sheet;
}

void PriceSheet::set_rate(std::string_view kind, HardwareRate rate) {
    if (!(rate.preemptible_usd_per_hour > 0.0) || rate.preemptible_usd_per_hour > rate.on_demand_usd_per_hour) {
        throw DataError("rates for '" + std::string(kind) + "' must satisfy 0 < preemptible <= on_demand");
    }
    rates_[to_lower(kind)] = {std::string(kind), rate};
}

const HardwareRate& PriceSheet::rate(std::string_view kind) const {
    const auto it = rates_.find(to_lower(kind));
    if (it == rates_.end()) {
        std::string names;
        for (const auto& [key, entry] : rates_) {
            if (!names.empty()) names += ", ";
            names += entry.first;
        }
        throw DataError("unknown hardware kind '" + std::string(kind) + "'; priced kinds: " + names);
    }
    return it->second.second;
}

bool PriceSheet::has(std::string_view kind) const {
    return rates_.contains(to_lower(kind));
}

std::vector<std::string> PriceSheet::kinds() const {
    std::vector<std::string> names;
    names.reserve(rates_.size());
    for (const auto& [key, entry] : rates_) {
        names.push_back(entry.first);
    }
    return names;
}

void PriceSheet::set_electricity_usd_per_kwh(double value) {
    if (!(value > 0.0)) {
        throw DataError("electricity price must be positive");
    }
    electricity_usd_per_kwh_ = value;
}

CostRange cloud_cost_range(std::string_view hardware, unsigned unit_count, double hours, const PriceSheet& sheet) {
    if (hours < 0.0) {
        throw DataError("hours must be >= 0");
    }
    if (unit_count == 0) {
        throw DataError("unit count must be positive");
    }
    const HardwareRate& rate = sheet.rate(hardware);
    const double unit_hours = hours * static_cast<double>(unit_count);
    return CostRange{unit_hours * rate.preemptible_usd_per_hour, unit_hours * rate.on_demand_usd_per_hour};
}

double electricity_cost(double kwh, const PriceSheet& sheet) {
    if (kwh < 0.0) {
        throw DataError("kwh must be >= 0");
    }
    return kwh * sheet.electricity_usd_per_kwh();
}

PriceSheet load_price_sheet(std::istream& in, PriceSheet base) {
    // Partially specified kinds are collected first so a file may introduce
    // a new kind across two lines.
    std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> pending;

    for (const auto& [key, value, line_number] : parse_key_values(in)) {
        const auto fail = [&, line = line_number](const std::string& message) -> void {
            throw DataError("price-sheet line " + std::to_string(line) + ": " + message);
        };

        const auto number = try_parse_double(value);
        if (!number) fail("bad value '" + value + "' for key '" + key + "'");

        if (key == "electricity_per_kwh") {
            if (!(*number > 0.0)) fail("electricity price must be positive");
            base.set_electricity_usd_per_kwh(*number);
            continue;
        }

        const std::size_t dot = key.rfind('.');
        if (dot == std::string::npos || dot == 0) {
            fail("unknown key '" + key + "' (expected <hardware>.preemptible, <hardware>.on_demand "
                 "or electricity_per_kwh)");
        }
        const std::string kind = key.substr(0, dot);
        const std::string field = key.substr(dot + 1);
        auto& entry = pending[kind];
        if (field == "preemptible") {
            entry.first = *number;
        } else if (field == "on_demand") {
            entry.second = *number;
        } else {
            fail("unknown rate field '" + field + "' for hardware '" + kind + "'");
        }
    }

    for (const auto& [kind, entry] : pending) {
        HardwareRate rate;
        if (base.has(kind)) {
            rate = base.rate(kind);
        } else if (!entry.first || !entry.second) {
            throw DataError("hardware '" + kind + "' needs both preemptible and on_demand rates");
        }
        if (entry.first) rate.preemptible_usd_per_hour = *entry.first;
        if (entry.second) rate.on_demand_usd_per_hour = *entry.second;
        base.set_rate(kind, rate);
    }
    return base;
}

PriceSheet load_price_sheet(const std::filesystem::path& path, PriceSheet base) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open price-sheet file '" + path.string() + "'");
    }
    return load_price_sheet(in, std::move(base));
}

} // namespace wattprint::cost
