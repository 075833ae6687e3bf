#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wattprint/telemetry/sample.hpp"

namespace wattprint::telemetry {

// A provider is polled once per sampler tick and returns zero or more
// samples.  Energy-counter providers return nothing on their first poll
// (the reading only primes the delta).  Failures are reported by throwing;
// the sampler logs and records a gap for that tick.
class PowerProvider {
public:
    virtual ~PowerProvider() = default;
    virtual std::string name() const = 0;
    virtual std::vector<PowerSample> poll() = 0;
};

using ProviderPtr = std::shared_ptr<PowerProvider>;

// Constant-valued provider for tests and the mock-provider CLI toggle.
class MockPowerProvider : public PowerProvider {
public:
    MockPowerProvider(Source source, std::uint32_t device_index, double watts);

    std::string name() const override;
    std::vector<PowerSample> poll() override;

private:
    Source source_;
    std::uint32_t device_index_;
    double watts_;
};

// Replays a recorded series one timestamp group per poll, preserving the
// original timestamps.  Draining all ticks reproduces the series exactly.
class ReplayProvider : public PowerProvider {
public:
    explicit ReplayProvider(SampleSeries series);

    std::string name() const override { return "replay"; }
    std::vector<PowerSample> poll() override;

    std::size_t remaining_ticks() const;

private:
    std::vector<PowerSample> samples_;
    std::size_t next_ = 0;
};

// Reads cumulative package/DRAM energy counters from the power-capping
// sysfs tree (<root>/intel-rapl:<socket>[/:<sub>]/energy_uj).  The root is
// overridable so tests can point at a synthetic tree.
class RaplSysfsReader {
public:
    explicit RaplSysfsReader(std::filesystem::path root = "/sys/class/powercap");

    // Throws EnvError when the domain is not exposed on this host.
    EnergyCounterReading read(EnergyDomain domain, unsigned socket = 0) const;

    std::vector<unsigned> sockets() const;
    bool has_domain(EnergyDomain domain, unsigned socket = 0) const;

private:
    std::filesystem::path domain_dir(EnergyDomain domain, unsigned socket) const;

    std::filesystem::path root_;
};

// Convenience wrapper over the default sysfs tree, socket 0.
EnergyCounterReading read_cpu_energy(EnergyDomain domain);

// Converts an energy counter into per-tick power samples.  The first poll
// primes the counter and yields nothing.
class EnergyRateProvider : public PowerProvider {
public:
    using ReadFn = std::function<EnergyCounterReading()>;

    EnergyRateProvider(std::string name, Source source, std::uint32_t device_index, ReadFn read);

    // One provider per (domain, socket) found under the reader's root.
    static std::vector<ProviderPtr> discover(const RaplSysfsReader& reader);

    std::string name() const override { return name_; }
    std::vector<PowerSample> poll() override;

private:
    std::string name_;
    Source source_;
    std::uint32_t device_index_;
    ReadFn read_;
    bool primed_ = false;
    EnergyCounterReading previous_{};
};

// Queries the GPU management tool as a subprocess for instantaneous board
// power.  The command is overridable for testing against a stub.
class GpuSmiProvider : public PowerProvider {
public:
    explicit GpuSmiProvider(std::string command = "nvidia-smi");

    std::string name() const override { return "gpu"; }

    // One sample per visible GPU; throws EnvError when the tool is absent
    // and DataError when its output cannot be parsed.
    std::vector<PowerSample> poll() override;

    bool available() const;

private:
    std::string command_;
};

// Instantaneous board power of a single device, per the management tool.
PowerSample read_gpu_power(std::uint32_t device_index, const std::string& command = "nvidia-smi");

std::int64_t now_epoch_ms();

} // namespace wattprint::telemetry
