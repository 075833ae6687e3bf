#include "wattprint/telemetry/sampler.hpp"

#include <chrono>
#include <iostream>

#include "wattprint/error.hpp"

namespace wattprint::telemetry {

namespace {

void poll_into(SampleSeries& series, const std::vector<ProviderPtr>& providers, const ErrorSink& on_error) {
    for (const ProviderPtr& provider : providers) {
        try {
            for (const PowerSample& sample : provider->poll()) {
                series.append(sample);
            }
        } catch (const std::exception& e) {
            if (on_error) on_error(provider->name() + ": " + e.what());
        }
    }
}

void check_arguments(const std::vector<ProviderPtr>& providers, std::int64_t interval_ms) {
    if (interval_ms <= 0) {
        throw DataError("sampling interval must be positive");
    }
    if (providers.empty()) {
        throw DataError("at least one provider is required");
    }
}

} // namespace

ErrorSink stderr_error_sink() {
    return [](const std::string& message) { std::cerr << "sampler: " << message << '\n'; };
}

SampleSeries run_sampler(const std::vector<ProviderPtr>& providers, std::int64_t interval_ms,
                         std::int64_t duration_ms, const ErrorSink& on_error) {
    check_arguments(providers, interval_ms);
    const std::int64_t ticks = duration_ms / interval_ms;

    SampleSeries series(interval_ms);
    auto deadline = std::chrono::steady_clock::now();
    for (std::int64_t tick = 0; tick < ticks; ++tick) {
        poll_into(series, providers, on_error);
        deadline += std::chrono::milliseconds(interval_ms);
        if (tick + 1 < ticks) {
            std::this_thread::sleep_until(deadline);
        }
    }
    return series;
}

SampleSeries drain_provider(PowerProvider& provider, const ErrorSink& on_error) {
    SampleSeries series;
    while (true) {
        try {
            const auto samples = provider.poll();
            if (samples.empty()) break;
            for (const PowerSample& sample : samples) {
                series.append(sample);
            }
        } catch (const std::exception& e) {
            if (on_error) on_error(provider.name() + ": " + e.what());
            break;
        }
    }
    return series;
}

Sampler::Sampler(std::vector<ProviderPtr> providers, std::int64_t interval_ms, ErrorSink on_error)
    : providers_(std::move(providers)), interval_ms_(interval_ms), on_error_(std::move(on_error)),
      series_(interval_ms) {
    check_arguments(providers_, interval_ms_);
}

Sampler::~Sampler() {
    if (running_) {
        thread_.request_stop();
    }
}

void Sampler::start() {
    if (running_) return;
    running_ = true;
    thread_ = std::jthread([this](std::stop_token stop) { run(stop); });
}

void Sampler::run(std::stop_token stop) {
    auto deadline = std::chrono::steady_clock::now();
    while (!stop.stop_requested()) {
        tick();
        deadline += std::chrono::milliseconds(interval_ms_);
        std::mutex wait_mutex;
        std::unique_lock lock(wait_mutex);
        wake_.wait_until(lock, stop, deadline, [] { return false; });
    }
}

void Sampler::tick() {
    std::lock_guard lock(mutex_);
    poll_into(series_, providers_, on_error_);
}

SampleSeries Sampler::stop() {
    if (running_) {
        thread_.request_stop();
        thread_.join();
        running_ = false;
    }
    std::lock_guard lock(mutex_);
    return series_;
}

SampleSeries Sampler::snapshot() const {
    std::lock_guard lock(mutex_);
    return series_;
}

} // namespace wattprint::telemetry
