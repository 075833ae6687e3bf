#include "wattprint/telemetry/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::telemetry {

namespace {

[[noreturn]] void fail_line(std::size_t line_number, const std::string& message) {
    throw DataError("trace line " + std::to_string(line_number) + ": " + message);
}

} // namespace

SampleSeries load_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("trace is empty; expected header '" + std::string(kTraceHeader) + "'");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader) {
        throw DataError("trace header mismatch; expected '" + std::string(kTraceHeader) + "', got '" + line + "'");
    }

    SampleSeries series;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto fields = split_csv(line);
        if (fields.size() != 4) {
            fail_line(line_number, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        const auto timestamp = try_parse_int64(fields[0]);
        if (!timestamp) fail_line(line_number, "bad timestamp '" + fields[0] + "'");
        const auto source = source_from_string(fields[1]);
        if (!source) fail_line(line_number, "unknown source '" + fields[1] + "'");
        const auto device = try_parse_uint64(fields[2]);
        if (!device || *device > 0xFFFFFFFFull) fail_line(line_number, "bad device index '" + fields[2] + "'");
        const auto watts = try_parse_double(fields[3]);
        if (!watts) fail_line(line_number, "bad watts '" + fields[3] + "'");

        try {
            series.append(PowerSample{*timestamp, *source, static_cast<std::uint32_t>(*device), *watts});
        } catch (const DataError& e) {
            fail_line(line_number, e.what());
        }
    }
    return series;
}

SampleSeries load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open trace file '" + path.string() + "'");
    }
    return load_trace(in);
}

void save_trace(const SampleSeries& series, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const PowerSample& sample : series.samples()) {
        out << sample.timestamp_ms << ',' << to_string(sample.source) << ',' << sample.device_index << ','
            << format_double(sample.watts) << '\n';
    }
}

void save_trace(const SampleSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open trace file '" + path.string() + "' for writing");
    }
    save_trace(series, out);
}

} // namespace wattprint::telemetry
