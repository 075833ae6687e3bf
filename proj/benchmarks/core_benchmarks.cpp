#include <sstream>

#include <benchmark/benchmark.h>

#include "wattprint/footprint/model.hpp"
#include "wattprint/ledger/fixture.hpp"
#include "wattprint/ledger/job_log.hpp"
#include "wattprint/ledger/summary.hpp"
#include "wattprint/report/render.hpp"
#include "wattprint/telemetry/trace.hpp"

using namespace wattprint;

namespace {

telemetry::SampleSeries make_series(std::size_t samples) {
    telemetry::SampleSeries series(1000);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto source = static_cast<telemetry::Source>(i % 3);
        series.append({static_cast<std::int64_t>(i / 3) * 1000, source, static_cast<std::uint32_t>(i % 2),
                       100.0 + static_cast<double>(i % 97)});
    }
    return series;
}

void BM_AveragePower(benchmark::State& state) {
    const auto series = make_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(telemetry::average_power(series, telemetry::Source::Gpu));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AveragePower)->Range(1 << 10, 1 << 18);

void BM_ProfileFromSeries(benchmark::State& state) {
    const auto series = make_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(footprint::profile_from_series(series));
    }
}
BENCHMARK(BM_ProfileFromSeries)->Range(1 << 10, 1 << 16);

void BM_TraceSave(benchmark::State& state) {
    const auto series = make_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        std::ostringstream out;
        telemetry::save_trace(series, out);
        benchmark::DoNotOptimize(out.str());
    }
}
BENCHMARK(BM_TraceSave)->Range(1 << 10, 1 << 16);

void BM_TraceLoad(benchmark::State& state) {
    const auto series = make_series(static_cast<std::size_t>(state.range(0)));
    std::ostringstream out;
    telemetry::save_trace(series, out);
    const std::string text = out.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(telemetry::load_trace(in));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_TraceLoad)->Range(1 << 10, 1 << 16);

void BM_GenerateSyntheticLog(benchmark::State& state) {
    ledger::SyntheticLogSpec spec;
    spec.job_count = static_cast<std::size_t>(state.range(0));
    spec.total_device_hours = 50.0 * static_cast<double>(spec.job_count);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ledger::generate_synthetic_log(spec));
    }
}
BENCHMARK(BM_GenerateSyntheticLog)->Arg(1000)->Arg(4789);

void BM_ParseJobLog(benchmark::State& state) {
    const auto jobs = ledger::generate_synthetic_log(ledger::SyntheticLogSpec{});
    std::ostringstream out;
    ledger::write_job_log(jobs, out);
    const std::string text = out.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(ledger::parse_job_log(in));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseJobLog);

void BM_Summarize(benchmark::State& state) {
    const auto jobs = ledger::generate_synthetic_log(ledger::SyntheticLogSpec{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(ledger::summarize(jobs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}
BENCHMARK(BM_Summarize);

void BM_RenderCsv(benchmark::State& state) {
    report::ReportDocument doc;
    for (int i = 0; i < 64; ++i) {
        report::ReportRow row;
        row.label = "row " + std::to_string(i);
        row.watts = 1515.43;
        row.hours = 84;
        row.kwh = 201.12787176;
        row.co2e_lbs = 191.87598965904002;
        row.cloud_cost = cost::CostRange{288.96, 981.12};
        row.electricity_usd = 24.135;
        doc.rows.push_back(std::move(row));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(report::render(doc, report::Format::Csv));
    }
}
BENCHMARK(BM_RenderCsv);

} // namespace

BENCHMARK_MAIN();
