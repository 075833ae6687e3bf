#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wattprint/config.hpp"
#include "wattprint/cost/pricing.hpp"
#include "wattprint/error.hpp"
#include "wattprint/footprint/energy_mix.hpp"
#include "wattprint/footprint/model.hpp"
#include "wattprint/footprint/presets.hpp"
#include "wattprint/ledger/fixture.hpp"
#include "wattprint/ledger/job_log.hpp"
#include "wattprint/ledger/summary.hpp"
#include "wattprint/report/render.hpp"
#include "wattprint/telemetry/sampler.hpp"
#include "wattprint/telemetry/trace.hpp"
#include "wattprint/text.hpp"

namespace {

using namespace wattprint;

// Environment knobs, mainly for tests and machines without the real
// interfaces:
//   WATTPRINT_MOCK_PROVIDERS  "1"/"all" or a comma list of sources; replaces
//                             live providers with deterministic constants
//   WATTPRINT_POWERCAP_ROOT   alternative power-capping sysfs root
//   WATTPRINT_GPU_SMI         alternative GPU management command

struct GlobalOptions {
    std::string config_file;
    std::string format_name = "text";
    std::string prices_file;
    std::string mix_file;
    std::string presets_file;
    std::optional<double> pue;
    std::optional<double> co2e_per_kwh;
};

struct Effective {
    footprint::FootprintConfig config;
    cost::PriceSheet sheet = cost::PriceSheet::defaults();
    std::vector<footprint::WorkloadPreset> presets = footprint::builtin_presets();
    std::vector<footprint::EnergyMix> mixes = footprint::builtin_energy_mixes();
    report::Format format = report::Format::Text;
    report::Provenance provenance;
};

// Precedence: flags > config file > defaults.
Effective resolve(const GlobalOptions& options) {
    Effective effective;
    if (!options.config_file.empty()) {
        effective.config = load_footprint_config(std::filesystem::path(options.config_file));
    }
    if (options.pue) effective.config.pue = *options.pue;
    if (options.co2e_per_kwh) effective.config.co2e_lbs_per_kwh = *options.co2e_per_kwh;
    footprint::validate(effective.config);

    if (!options.prices_file.empty()) {
        effective.sheet = cost::load_price_sheet(std::filesystem::path(options.prices_file));
    }
    if (!options.presets_file.empty()) {
        effective.presets = footprint::load_presets(std::filesystem::path(options.presets_file));
    }
    if (!options.mix_file.empty()) {
        effective.mixes = footprint::load_energy_mixes(std::filesystem::path(options.mix_file));
    }

    const auto format = report::format_from_string(options.format_name);
    if (!format) {
        throw DataError("unknown format '" + options.format_name + "' (expected text, csv or jsonl)");
    }
    effective.format = *format;

    effective.provenance.pue = effective.config.pue;
    effective.provenance.co2e_lbs_per_kwh = effective.config.co2e_lbs_per_kwh;
    effective.provenance.price_source = options.prices_file.empty() ? "defaults" : options.prices_file;
    if (!options.presets_file.empty()) effective.provenance.extra.emplace_back("presets", options.presets_file);
    if (!options.mix_file.empty()) effective.provenance.extra.emplace_back("mixes", options.mix_file);
    return effective;
}

std::string hardware_display(const std::string& kind, unsigned count) {
    return kind + " x" + std::to_string(count);
}

report::ReportRow preset_row(const footprint::WorkloadPreset& preset, const Effective& effective) {
    report::ReportRow row;
    row.label = preset.name;
    row.hardware = hardware_display(preset.hardware, preset.unit_count);
    row.hours = preset.hours;
    if (preset.combined_watts) {
        row.watts = *preset.combined_watts;
        const double kwh = footprint::energy_kwh(*preset.combined_watts, preset.hours, effective.config);
        row.kwh = kwh;
        row.co2e_lbs = footprint::co2e_lbs(kwh, effective.config);
    }
    if (effective.sheet.has(preset.hardware)) {
        row.cloud_cost = cost::cloud_cost_range(preset.hardware, preset.unit_count, preset.hours, effective.sheet);
    }
    return row;
}

std::int64_t parse_duration_ms(const std::string& text) {
    std::string_view view = trim(text);
    std::int64_t scale = 1000; // bare numbers are seconds
    if (view.ends_with("ms")) {
        scale = 1;
        view.remove_suffix(2);
    } else if (view.ends_with("s")) {
        view.remove_suffix(1);
    } else if (view.ends_with("m")) {
        scale = 60'000;
        view.remove_suffix(1);
    }
    const auto value = try_parse_int64(trim(view));
    if (!value || *value <= 0) {
        throw DataError("bad duration '" + text + "' (use e.g. 5s, 500ms, 2m)");
    }
    return *value * scale;
}

int run_workload(const std::vector<std::string>& args) {
    const pid_t pid = ::fork();
    if (pid < 0) {
        throw EnvError("cannot fork workload process");
    }
    if (pid == 0) {
        std::vector<char*> argv;
        argv.reserve(args.size() + 1);
        for (const std::string& arg : args) {
            argv.push_back(const_cast<char*>(arg.c_str()));
        }
        argv.push_back(nullptr);
        ::execvp(argv[0], argv.data());
        std::perror("wattprint: exec workload");
        ::_exit(127);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return 128;
}

std::vector<telemetry::ProviderPtr> mock_providers(std::string_view selector) {
    using telemetry::MockPowerProvider;
    using telemetry::Source;

    const std::string lowered = to_lower(selector);
    const bool all = lowered == "1" || lowered == "true" || lowered == "all";
    const auto wanted = [&](std::string_view name) {
        return all || lowered.find(name) != std::string::npos;
    };

    std::vector<telemetry::ProviderPtr> providers;
    if (wanted("cpu-package")) {
        providers.push_back(std::make_shared<MockPowerProvider>(Source::CpuPackage, 0, 42.5));
    }
    if (wanted("dram")) {
        providers.push_back(std::make_shared<MockPowerProvider>(Source::Dram, 0, 6.25));
    }
    if (wanted("gpu")) {
        providers.push_back(std::make_shared<MockPowerProvider>(Source::Gpu, 0, 180.25));
    }
    return providers;
}

std::vector<telemetry::ProviderPtr> discover_providers() {
    if (const char* mock = std::getenv("WATTPRINT_MOCK_PROVIDERS"); mock != nullptr && *mock != '\0') {
        return mock_providers(mock);
    }

    std::vector<telemetry::ProviderPtr> providers;
    const char* root = std::getenv("WATTPRINT_POWERCAP_ROOT");
    const telemetry::RaplSysfsReader reader(root != nullptr ? root : "/sys/class/powercap");
    for (auto& provider : telemetry::EnergyRateProvider::discover(reader)) {
        providers.push_back(std::move(provider));
    }

    const char* smi = std::getenv("WATTPRINT_GPU_SMI");
    auto gpu = std::make_shared<telemetry::GpuSmiProvider>(smi != nullptr ? smi : "nvidia-smi");
    if (gpu->available()) {
        providers.push_back(std::move(gpu));
    }
    return providers;
}

struct TrackOptions {
    std::string replay_file;
    std::string trace_out;
    std::string duration;
    std::int64_t interval_ms = 1000;
    std::optional<double> hours;
    std::string hardware;
    unsigned count = 1;
    std::vector<std::string> workload;
};

int cmd_track(const GlobalOptions& global, const TrackOptions& options) {
    Effective effective = resolve(global);

    telemetry::SampleSeries series;
    int workload_exit = 0;
    std::string label;

    if (!options.replay_file.empty()) {
        if (!options.workload.empty() || !options.duration.empty()) {
            throw DataError("--replay cannot be combined with --duration or a workload command");
        }
        telemetry::ReplayProvider replay(telemetry::load_trace(std::filesystem::path(options.replay_file)));
        series = telemetry::drain_provider(replay);
        label = "replay " + options.replay_file;
        effective.provenance.extra.emplace_back("replay", options.replay_file);
    } else {
        const auto providers = discover_providers();
        if (providers.empty()) {
            throw EnvError("no power providers available and no --replay trace given "
                           "(no energy counters found and the GPU management tool is absent)");
        }
        if (!options.workload.empty()) {
            telemetry::Sampler sampler(providers, options.interval_ms);
            sampler.start();
            workload_exit = run_workload(options.workload);
            series = sampler.stop();
            label = options.workload.front();
        } else if (!options.duration.empty()) {
            series = telemetry::run_sampler(providers, options.interval_ms, parse_duration_ms(options.duration));
            label = "measured";
        } else {
            throw DataError("track needs --replay, --duration or a workload command after --");
        }
        effective.provenance.extra.emplace_back("interval_ms", std::to_string(options.interval_ms));
    }

    if (series.empty()) {
        throw EnvError("no samples were collected; every provider failed");
    }
    if (!options.trace_out.empty()) {
        telemetry::save_trace(series, std::filesystem::path(options.trace_out));
    }

    const footprint::MeasuredProfile measured = footprint::profile_from_series(series);
    const double hours =
        options.hours ? *options.hours : static_cast<double>(series.span_ms()) / 3'600'000.0;
    const footprint::FootprintEstimate estimate =
        footprint::estimate_footprint(measured.profile, hours, effective.config, measured.partial);

    report::ReportRow row;
    row.label = label;
    row.watts = estimate.combined_watts;
    row.hours = hours;
    row.kwh = estimate.kwh_pue;
    row.co2e_lbs = estimate.co2e_lbs;
    row.partial = estimate.partial;
    if (!options.hardware.empty()) {
        row.hardware = hardware_display(options.hardware, options.count);
        row.cloud_cost = cost::cloud_cost_range(options.hardware, options.count, hours, effective.sheet);
    }
    row.electricity_usd = cost::electricity_cost(estimate.kwh_pue, effective.sheet);

    report::ReportDocument doc;
    doc.title = "measured workload report";
    doc.notes.push_back("samples: " + std::to_string(series.size()));
    doc.rows.push_back(std::move(row));
    doc.provenance = effective.provenance;
    std::cout << report::render(doc, effective.format);
    return workload_exit;
}

struct EstimateOptions {
    std::vector<std::string> presets;
    bool all_presets = false;
    std::optional<double> watts;
    std::optional<double> hours;
    std::string hardware;
    unsigned count = 1;
    std::string label = "custom";
};

int cmd_estimate(const GlobalOptions& global, const EstimateOptions& options) {
    const Effective effective = resolve(global);

    report::ReportDocument doc;
    doc.title = "training footprint and cost estimates";
    doc.provenance = effective.provenance;

    const bool custom = options.watts.has_value() || options.hours.has_value();
    if (custom && (!options.watts || !options.hours)) {
        throw DataError("--watts and --hours must be given together");
    }

    if (options.all_presets || (!custom && options.presets.empty())) {
        for (const auto& preset : effective.presets) {
            doc.rows.push_back(preset_row(preset, effective));
        }
    }
    for (const std::string& name : options.presets) {
        doc.rows.push_back(preset_row(footprint::find_preset(name, effective.presets), effective));
    }
    if (custom) {
        report::ReportRow row;
        row.label = options.label;
        row.watts = *options.watts;
        row.hours = *options.hours;
        const double kwh = footprint::energy_kwh(*options.watts, *options.hours, effective.config);
        row.kwh = kwh;
        row.co2e_lbs = footprint::co2e_lbs(kwh, effective.config);
        if (!options.hardware.empty()) {
            row.hardware = hardware_display(options.hardware, options.count);
            row.cloud_cost =
                cost::cloud_cost_range(options.hardware, options.count, *options.hours, effective.sheet);
        }
        doc.rows.push_back(std::move(row));
    }

    std::cout << report::render(doc, effective.format);
    return 0;
}

std::string render_mixes(const std::vector<footprint::EnergyMix>& mixes, report::Format format) {
    std::string out;
    switch (format) {
        case report::Format::Csv:
            out += "consumer,renewable_pct,gas_pct,coal_pct,nuclear_pct\n";
            for (const auto& mix : mixes) {
                out += mix.consumer + ',' + format_double(mix.renewable_pct) + ',' + format_double(mix.gas_pct) +
                       ',' + format_double(mix.coal_pct) + ',' + format_double(mix.nuclear_pct) + '\n';
            }
            return out;
        case report::Format::JsonLines:
            for (const auto& mix : mixes) {
                nlohmann::ordered_json line;
                line["consumer"] = mix.consumer;
                line["renewable_pct"] = mix.renewable_pct;
                line["gas_pct"] = mix.gas_pct;
                line["coal_pct"] = mix.coal_pct;
                line["nuclear_pct"] = mix.nuclear_pct;
                out += line.dump();
                out += '\n';
            }
            return out;
        case report::Format::Text: {
            out += "energy sources by consumer (percent)\n\n";
            out += "  consumer        renewable    gas   coal   nuclear\n";
            out += "  -------------------------------------------------\n";
            for (const auto& mix : mixes) {
                char line[128];
                std::snprintf(line, sizeof line, "  %-15s %9s  %5s  %5s  %8s\n", mix.consumer.c_str(),
                              format_double(mix.renewable_pct).c_str(), format_double(mix.gas_pct).c_str(),
                              format_double(mix.coal_pct).c_str(), format_double(mix.nuclear_pct).c_str());
                out += line;
            }
            return out;
        }
    }
    throw DataError("unknown report format");
}

int cmd_mix(const GlobalOptions& global, const std::string& consumer) {
    const Effective effective = resolve(global);
    std::vector<footprint::EnergyMix> rows;
    if (consumer.empty()) {
        rows = effective.mixes;
    } else {
        rows.push_back(footprint::find_energy_mix(consumer, effective.mixes));
    }
    std::cout << render_mixes(rows, effective.format);
    return 0;
}

struct AggregateOptions {
    std::string log_file;
    std::string proxy_hardware = "P100";
    double watts = ledger::kDefaultJobWatts;
    bool watts_given = false;
    std::string scenarios = "1,24,all";
    std::optional<double> model_hours;
};

int cmd_aggregate(const GlobalOptions& global, const AggregateOptions& options) {
    Effective effective = resolve(global);

    const auto jobs = ledger::parse_job_log(std::filesystem::path(options.log_file));
    if (jobs.empty()) {
        throw DataError("empty log: '" + options.log_file + "' contains no job records");
    }
    const ledger::ExperimentSummary summary = ledger::summarize(jobs);

    // Hours of one final training run; the published case-study figure
    // unless the log itself pins it down.
    const double model_hours = options.model_hours
                                   ? *options.model_hours
                                   : (jobs.size() == 1 ? jobs.front().device_hours() : 120.0);
    const double scenario_watts = options.watts;
    const double all_watts =
        options.watts_given ? options.watts : ledger::weighted_avg_watts(jobs, options.watts);

    report::ReportDocument doc;
    doc.title = "experiment log accounting";

    for (const std::string& token : split_csv(options.scenarios)) {
        const std::string_view item = trim(token);
        double hours = 0.0;
        double watts = scenario_watts;
        std::string label;
        if (item == "all") {
            hours = summary.total_device_hours;
            watts = all_watts;
            label = "all models (" + std::to_string(summary.job_count) + " jobs)";
        } else {
            const auto k = try_parse_int64(item);
            if (!k || *k <= 0) {
                throw DataError("bad scenario '" + std::string(item) + "' (expected a positive count or 'all')");
            }
            hours = static_cast<double>(*k) * model_hours;
            label = std::to_string(*k) + (*k == 1 ? " model" : " models");
        }
        const ledger::ScenarioCosts costs =
            ledger::scenario_costs(hours, watts, options.proxy_hardware, effective.sheet, effective.config);

        report::ReportRow row;
        row.label = label;
        row.hardware = options.proxy_hardware + " (proxy)";
        row.watts = watts;
        row.hours = hours;
        row.kwh = costs.kwh_pue;
        row.co2e_lbs = costs.co2e_lbs;
        row.cloud_cost = costs.cloud;
        row.electricity_usd = costs.electricity_usd;
        doc.rows.push_back(std::move(row));
    }

    doc.notes.push_back("jobs: " + std::to_string(summary.job_count));
    doc.notes.push_back("window: " + format_iso8601(summary.window_start_ms) + " .. " +
                        format_iso8601(summary.window_end_ms) + " (" + format_double(summary.span_days()) +
                        " days)");
    doc.notes.push_back("device-hours: " + format_double(summary.total_device_hours) +
                        " (avg concurrent devices " + format_double(summary.avg_concurrent_devices()) + ")");
    doc.notes.push_back("job hours: min " + format_double(summary.min_job_hours) + " / avg " +
                        format_double(summary.avg_job_hours()) + " / max " +
                        format_double(summary.max_job_hours));
    std::string share_note = "device-hour share:";
    for (const auto& [kind, share] : summary.hardware_share()) {
        share_note += " " + kind + " " + std::to_string(report::display_round(share * 100.0)) + "%";
    }
    doc.notes.push_back(std::move(share_note));

    effective.provenance.extra.emplace_back("log", options.log_file);
    effective.provenance.extra.emplace_back("proxy_hardware", options.proxy_hardware);
    effective.provenance.extra.emplace_back("avg_watts", format_double(all_watts));
    effective.provenance.extra.emplace_back("model_hours", format_double(model_hours));
    doc.provenance = effective.provenance;

    std::cout << report::render(doc, effective.format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wattprint: power telemetry and energy/CO2e/cost accounting for training workloads"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config_file, "key-value config file (pue, co2e_lbs_per_kwh)");
    app.add_option("--format", global.format_name, "output format: text, csv or jsonl")
        ->default_str("text");
    app.add_option("--prices", global.prices_file, "price-sheet file overriding the default rates");
    app.add_option("--mix-file", global.mix_file, "energy-mix CSV overriding the bundled table");
    app.add_option("--presets-file", global.presets_file, "presets CSV overriding the bundled table");
    app.add_option("--pue", global.pue, "power usage effectiveness coefficient (default 1.58)");
    app.add_option("--co2e-per-kwh", global.co2e_per_kwh, "emissions factor in lbs CO2e per kWh (default 0.954)");

    TrackOptions track_options;
    CLI::App* track = app.add_subcommand("track", "sample power draw of a live workload or replay a trace");
    track->add_option("--replay", track_options.replay_file, "replay a recorded trace instead of sampling");
    track->add_option("--trace-out", track_options.trace_out, "write the collected samples as a trace file");
    track->add_option("--duration", track_options.duration, "sample for a fixed time, e.g. 5s, 500ms, 2m");
    track->add_option("--interval-ms", track_options.interval_ms, "sampling interval in milliseconds")
        ->default_val(1000);
    track->add_option("--hours", track_options.hours,
                      "project the measured draw over this many hours (default: the sampled span)");
    track->add_option("--hardware", track_options.hardware, "hardware kind for cloud pricing, e.g. P100");
    track->add_option("--count", track_options.count, "device count for cloud pricing")->default_val(1);
    track->add_option("workload", track_options.workload, "workload command to run while sampling");
    track->positionals_at_end();

    EstimateOptions estimate_options;
    CLI::App* estimate = app.add_subcommand("estimate", "footprint and cost from presets or explicit figures");
    estimate->add_option("--preset", estimate_options.presets, "preset name; repeatable");
    estimate->add_flag("--all-presets", estimate_options.all_presets, "estimate every known preset");
    estimate->add_option("--watts", estimate_options.watts, "combined average draw in watts");
    estimate->add_option("--hours", estimate_options.hours, "training duration in hours");
    estimate->add_option("--hardware", estimate_options.hardware, "hardware kind for cloud pricing");
    estimate->add_option("--count", estimate_options.count, "device count for cloud pricing")->default_val(1);
    estimate->add_option("--label", estimate_options.label, "row label for an explicit estimate");

    std::string mix_consumer;
    CLI::App* mix = app.add_subcommand("mix", "energy-source breakdown for a consumer");
    mix->add_option("consumer", mix_consumer, "consumer name, e.g. Google; omit to list all");

    AggregateOptions aggregate_options;
    CLI::App* aggregate = app.add_subcommand("aggregate", "summarize an experiment job log and cost scenarios");
    aggregate->add_option("--log", aggregate_options.log_file, "job-log CSV file")->required();
    aggregate->add_option("--proxy-hardware", aggregate_options.proxy_hardware,
                          "hardware kind used to price device-hours")
        ->default_val("P100");
    CLI::Option* watts_option =
        aggregate->add_option("--watts", aggregate_options.watts,
                              "combined average draw per job in watts (default 217, the bundled-log figure)");
    aggregate->add_option("--scenarios", aggregate_options.scenarios,
                          "comma list of model counts and/or 'all'")
        ->default_val("1,24,all");
    aggregate->add_option("--model-hours", aggregate_options.model_hours,
                          "device-hours of one final training run (default 120, or the only job's hours)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    aggregate_options.watts_given = watts_option->count() > 0;

    try {
        if (track->parsed()) return cmd_track(global, track_options);
        if (estimate->parsed()) return cmd_estimate(global, estimate_options);
        if (mix->parsed()) return cmd_mix(global, mix_consumer);
        if (aggregate->parsed()) return cmd_aggregate(global, aggregate_options);
    } catch (const EnvError& e) {
        std::cerr << "wattprint: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "wattprint: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "wattprint: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
