#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wattprint::cost {

// Hourly USD rates for one accelerator kind.  Preemptible capacity bounds
// the cost range from below, on-demand from above.
struct HardwareRate {
    double preemptible_usd_per_hour = 0.0;
    double on_demand_usd_per_hour = 0.0;

    friend bool operator==(const HardwareRate&, const HardwareRate&) = default;
};

struct CostRange {
    double lower_usd = 0.0;
    double upper_usd = 0.0;

    friend bool operator==(const CostRange&, const CostRange&) = default;
};

// Rate table plus the electricity price.  Hardware kinds are matched
// case-insensitively.
class PriceSheet {
public:
    static PriceSheet defaults();

    // Validates 0 < preemptible <= on_demand.
    void set_rate(std::string_view kind, HardwareRate rate);
    const HardwareRate& rate(std::string_view kind) const; // DataError when unknown
    bool has(std::string_view kind) const;
    std::vector<std::string> kinds() const;

    double electricity_usd_per_kwh() const { return electricity_usd_per_kwh_; }
    void set_electricity_usd_per_kwh(double value);

private:
    std::map<std::string, std::pair<std::string, HardwareRate>> rates_; // normalized key -> (display kind, rate)
    double electricity_usd_per_kwh_ = 0.12;
};

// hours * unit_count * rate, full precision; reporting layers round to the
// nearest dollar.
CostRange cloud_cost_range(std::string_view hardware, unsigned unit_count, double hours, const PriceSheet& sheet);

double electricity_cost(double kwh, const PriceSheet& sheet);

// Key-value overrides on top of a base sheet:
//
//   p100.preemptible = 0.43
//   p100.on_demand = 1.46
//   electricity_per_kwh = 0.12
//
PriceSheet load_price_sheet(std::istream& in, PriceSheet base = PriceSheet::defaults());
PriceSheet load_price_sheet(const std::filesystem::path& path, PriceSheet base = PriceSheet::defaults());

} // namespace wattprint::cost
