#include "wattprint/ledger/job_log.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::ledger {

std::vector<JobRecord> parse_job_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("job log is empty; expected header '" + std::string(kJobLogHeader) + "'");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kJobLogHeader) {
        throw DataError("job-log header mismatch; expected '" + std::string(kJobLogHeader) + "'");
    }

    std::vector<JobRecord> jobs;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        const auto fail = [&](const std::string& message) -> void {
            throw DataError("job-log line " + std::to_string(line_number) + ": " + message);
        };

        const auto fields = split_csv(line);
        if (fields.size() != 6) fail("expected 6 fields, got " + std::to_string(fields.size()));

        JobRecord job;
        job.job_id = std::string(trim(fields[0]));
        if (job.job_id.empty()) fail("empty job id");

        const auto start = try_parse_iso8601(trim(fields[1]));
        if (!start) fail("bad start timestamp '" + fields[1] + "'");
        const auto end = try_parse_iso8601(trim(fields[2]));
        if (!end) fail("bad end timestamp '" + fields[2] + "'");
        if (*end <= *start) fail("end is not after start");
        job.start_ms = *start;
        job.end_ms = *end;

        job.hardware = std::string(trim(fields[3]));
        if (job.hardware.empty()) fail("empty hardware kind");

        const auto count = try_parse_uint64(trim(fields[4]));
        if (!count || *count == 0 || *count > 0xFFFFFFFFull) fail("bad device count '" + fields[4] + "'");
        job.device_count = static_cast<unsigned>(*count);

        if (const std::string_view watts_text = trim(fields[5]); !watts_text.empty()) {
            const auto watts = try_parse_double(watts_text);
            if (!watts || *watts < 0.0) fail("bad watts '" + fields[5] + "'");
            job.avg_total_watts = *watts;
        }

        jobs.push_back(std::move(job));
    }
    return jobs;
}

std::vector<JobRecord> parse_job_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open job log '" + path.string() + "'");
    }
    return parse_job_log(in);
}

void write_job_log(const std::vector<JobRecord>& jobs, std::ostream& out) {
    out << kJobLogHeader << '\n';
    for (const JobRecord& job : jobs) {
        out << job.job_id << ',' << format_iso8601(job.start_ms) << ',' << format_iso8601(job.end_ms) << ','
            << job.hardware << ',' << job.device_count << ',';
        if (job.avg_total_watts) {
            out << format_double(*job.avg_total_watts);
        }
        out << '\n';
    }
}

void write_job_log(const std::vector<JobRecord>& jobs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open job log '" + path.string() + "' for writing");
    }
    write_job_log(jobs, out);
}

} // namespace wattprint::ledger
