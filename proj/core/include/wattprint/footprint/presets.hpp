#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wattprint::footprint {

// Published hardware/runtime figures for a well-known training workload.
// combined_watts is absent where no public power figure exists (TPU
// hardware); such presets still support cost estimation.
struct WorkloadPreset {
    std::string name;
    std::string hardware;
    unsigned unit_count = 1;
    std::optional<double> combined_watts;
    double hours = 0.0;

    friend bool operator==(const WorkloadPreset&, const WorkloadPreset&) = default;
};

const std::vector<WorkloadPreset>& builtin_presets();

// Throws DataError listing the valid names when the preset is unknown.
const WorkloadPreset& find_preset(std::string_view name, const std::vector<WorkloadPreset>& presets);

// CSV with header name,hardware,unit_count,combined_watts,hours; the
// combined_watts field may be empty.
std::vector<WorkloadPreset> load_presets(std::istream& in);
std::vector<WorkloadPreset> load_presets(const std::filesystem::path& path);

} // namespace wattprint::footprint
