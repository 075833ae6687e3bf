#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wattprint::ledger {

// One training job in an experiment log.
struct JobRecord {
    std::string job_id;
    std::int64_t start_ms = 0; // epoch milliseconds, UTC
    std::int64_t end_ms = 0;   // strictly after start_ms
    std::string hardware;
    unsigned device_count = 1;
    std::optional<double> avg_total_watts; // combined draw while the job ran, when known

    double wall_hours() const { return static_cast<double>(end_ms - start_ms) / 3'600'000.0; }
    double device_hours() const { return wall_hours() * static_cast<double>(device_count); }

    friend bool operator==(const JobRecord&, const JobRecord&) = default;
};

// Job logs are UTF-8 CSV with LF endings and ISO-8601 UTC timestamps:
//
//   job_id,start_iso8601,end_iso8601,hardware,device_count,avg_total_watts
//   job-0001,2017-10-02T00:00:00Z,2017-10-03T06:30:00Z,titan_x,1,
//
// The watts field may be empty.
inline constexpr std::string_view kJobLogHeader =
    "job_id,start_iso8601,end_iso8601,hardware,device_count,avg_total_watts";

std::vector<JobRecord> parse_job_log(std::istream& in);
std::vector<JobRecord> parse_job_log(const std::filesystem::path& path);

void write_job_log(const std::vector<JobRecord>& jobs, std::ostream& out);
void write_job_log(const std::vector<JobRecord>& jobs, const std::filesystem::path& path);

} // namespace wattprint::ledger
