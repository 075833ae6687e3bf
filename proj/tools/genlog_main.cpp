// Regenerates the bundled synthetic experiment log (data/case_study.csv).
// The defaults reproduce the committed fixture byte for byte.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wattprint/error.hpp"
#include "wattprint/ledger/fixture.hpp"
#include "wattprint/text.hpp"

int main(int argc, char** argv) {
    using namespace wattprint;

    CLI::App app{"wattprint-genlog: deterministic synthetic job-log generator"};

    ledger::SyntheticLogSpec spec;
    std::string start_iso = "2017-10-02T00:00:00Z";
    std::string out_path;

    app.add_option("--seed", spec.seed, "RNG seed")->default_val(spec.seed);
    app.add_option("--jobs", spec.job_count, "number of jobs")->default_val(spec.job_count);
    app.add_option("--total-device-hours", spec.total_device_hours, "target total device-hours")
        ->default_val(spec.total_device_hours);
    app.add_option("--span-days", spec.span_days, "log window length in days")->default_val(spec.span_days);
    app.add_option("--start", start_iso, "window start, ISO-8601 UTC")->default_val(start_iso);
    app.add_option("--min-hours", spec.min_job_hours, "shortest job in hours")->default_val(spec.min_job_hours);
    app.add_option("--max-hours", spec.max_job_hours, "longest job in hours")->default_val(spec.max_job_hours);
    app.add_option("--primary-share", spec.primary_hardware_share, "fraction of jobs on the primary hardware")
        ->default_val(spec.primary_hardware_share);
    app.add_option("--primary", spec.primary_hardware, "primary hardware kind")
        ->default_val(spec.primary_hardware);
    app.add_option("--secondary", spec.secondary_hardware, "secondary hardware kind")
        ->default_val(spec.secondary_hardware);
    app.add_option("-o,--out", out_path, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto start_ms = try_parse_iso8601(start_iso);
        if (!start_ms) {
            throw DataError("bad --start timestamp '" + start_iso + "'");
        }
        spec.window_start_ms = *start_ms;

        const auto jobs = ledger::generate_synthetic_log(spec);
        if (out_path.empty()) {
            ledger::write_job_log(jobs, std::cout);
        } else {
            ledger::write_job_log(jobs, std::filesystem::path(out_path));
        }
    } catch (const std::exception& e) {
        std::cerr << "wattprint-genlog: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
