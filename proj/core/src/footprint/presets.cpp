#include "wattprint/footprint/presets.hpp"

#include <fstream>
#include <istream>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::footprint {

const std::vector<WorkloadPreset>& builtin_presets() {
    static const std::vector<WorkloadPreset> presets = {
        {"transformer_base", "P100", 8, 1415.78, 12},
        {"transformer_big", "P100", 8, 1515.43, 84},
        {"elmo", "P100", 3, 517.66, 336},
        {"bert_base", "V100", 64, 12041.51, 79.2},
        {"bert_base_tpu", "TPUv2", 16, std::nullopt, 96},
        {"nas_gpu", "P100", 8, 1515.43, 274120},
        {"nas_tpu", "TPUv2", 1, std::nullopt, 32623},
        {"gpt2", "TPUv3", 32, std::nullopt, 168},
    };
    return presets;
}

const WorkloadPreset& find_preset(std::string_view name, const std::vector<WorkloadPreset>& presets) {
    const std::string wanted = to_lower(trim(name));
    for (const WorkloadPreset& preset : presets) {
        if (to_lower(preset.name) == wanted) return preset;
    }
    std::string names;
    for (const WorkloadPreset& preset : presets) {
        if (!names.empty()) names += ", ";
        names += preset.name;
    }
    throw DataError("unknown preset '" + std::string(name) + "'; valid names: " + names);
}

std::vector<WorkloadPreset> load_presets(std::istream& in) {
    static constexpr std::string_view kHeader = "name,hardware,unit_count,combined_watts,hours";

    std::string line;
    if (!std::getline(in, line) || trim(line) != kHeader) {
        throw DataError("presets file must start with header '" + std::string(kHeader) + "'");
    }

    std::vector<WorkloadPreset> presets;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view content = trim(line);
        if (content.empty()) continue;

        const auto fail = [&](const std::string& message) -> void {
            throw DataError("presets line " + std::to_string(line_number) + ": " + message);
        };

        const auto fields = split_csv(content);
        if (fields.size() != 5) fail("expected 5 fields, got " + std::to_string(fields.size()));

        WorkloadPreset preset;
        preset.name = std::string(trim(fields[0]));
        preset.hardware = std::string(trim(fields[1]));
        if (preset.name.empty() || preset.hardware.empty()) fail("name and hardware are required");

        const auto count = try_parse_uint64(trim(fields[2]));
        if (!count || *count == 0 || *count > 0xFFFFFFFFull) fail("bad unit count '" + fields[2] + "'");
        preset.unit_count = static_cast<unsigned>(*count);

        if (const std::string_view watts_text = trim(fields[3]); !watts_text.empty()) {
            const auto watts = try_parse_double(watts_text);
            if (!watts || *watts < 0.0) fail("bad combined watts '" + fields[3] + "'");
            preset.combined_watts = *watts;
        }

        const auto hours = try_parse_double(trim(fields[4]));
        if (!hours || *hours < 0.0) fail("bad hours '" + fields[4] + "'");
        preset.hours = *hours;

        presets.push_back(std::move(preset));
    }
    if (presets.empty()) {
        throw DataError("presets file contains no rows");
    }
    return presets;
}

std::vector<WorkloadPreset> load_presets(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open presets file '" + path.string() + "'");
    }
    return load_presets(in);
}

} // namespace wattprint::footprint
