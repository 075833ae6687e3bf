#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "wattprint/telemetry/sample.hpp"

namespace wattprint::test {

// Self-deleting scratch directory.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("wattprint-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void make_executable(const std::filesystem::path& path, const std::string& script) {
    write_file(path, script);
    std::filesystem::permissions(path, std::filesystem::perms::owner_all);
}

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
    if (pipe == nullptr) return result;
    char buffer[1024];
    while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) {
        result.output += buffer;
    }
    const int status = ::pclose(pipe);
    if (status >= 0 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

inline telemetry::SampleSeries random_series(std::mt19937_64& rng, std::size_t max_samples = 64) {
    using telemetry::PowerSample;
    using telemetry::Source;

    std::uniform_int_distribution<std::size_t> count_dist(1, max_samples);
    std::uniform_real_distribution<double> watts_dist(0.0, 2000.0);
    std::uniform_int_distribution<int> source_dist(0, 2);
    std::uniform_int_distribution<std::uint32_t> device_dist(0, 3);
    std::uniform_int_distribution<std::int64_t> step_dist(0, 2000);

    telemetry::SampleSeries series;
    std::map<std::pair<Source, std::uint32_t>, std::int64_t> clocks;
    const std::size_t n = count_dist(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const Source source = static_cast<Source>(source_dist(rng));
        const std::uint32_t device = device_dist(rng);
        auto& clock = clocks[{source, device}];
        clock += step_dist(rng);
        series.append(PowerSample{clock, source, device, watts_dist(rng)});
    }
    return series;
}

} // namespace wattprint::test
