#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "wattprint/telemetry/providers.hpp"

namespace wattprint::telemetry {

// Receives one message per provider failure.  Failed ticks leave a gap in
// the series; they are never recorded as zero watts.
using ErrorSink = std::function<void(const std::string&)>;

ErrorSink stderr_error_sink();

// Polls every provider once per tick for floor(duration / interval) ticks.
// Throws DataError for a non-positive interval or an empty provider set.
SampleSeries run_sampler(const std::vector<ProviderPtr>& providers, std::int64_t interval_ms,
                         std::int64_t duration_ms, const ErrorSink& on_error = stderr_error_sink());

// Polls a provider with no pacing until it stops producing samples.
// Replaying a recorded trace this way reproduces the series exactly.
SampleSeries drain_provider(PowerProvider& provider, const ErrorSink& on_error = stderr_error_sink());

// Periodic background sampler for wrapping a live workload: one appender
// thread, any number of concurrent snapshot() readers.
class Sampler {
public:
    Sampler(std::vector<ProviderPtr> providers, std::int64_t interval_ms,
            ErrorSink on_error = stderr_error_sink());
    ~Sampler();

    Sampler(const Sampler&) = delete;
    Sampler& operator=(const Sampler&) = delete;

    void start();
    // Requests stop, joins the sampling thread and returns the final series.
    SampleSeries stop();
    // Consistent copy of everything appended so far.
    SampleSeries snapshot() const;

private:
    void run(std::stop_token stop);
    void tick();

    std::vector<ProviderPtr> providers_;
    std::int64_t interval_ms_;
    ErrorSink on_error_;

    mutable std::mutex mutex_;
    SampleSeries series_;
    std::condition_variable_any wake_;
    std::jthread thread_;
    bool running_ = false;
};

} // namespace wattprint::telemetry
