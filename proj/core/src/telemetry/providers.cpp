#include "wattprint/telemetry/providers.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>

#include <sys/wait.h>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::telemetry {

namespace fs = std::filesystem;

std::int64_t now_epoch_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

MockPowerProvider::MockPowerProvider(Source source, std::uint32_t device_index, double watts)
    : source_(source), device_index_(device_index), watts_(watts) {
    if (watts < 0.0) {
        throw DataError("mock provider watts must be >= 0");
    }
}

std::string MockPowerProvider::name() const {
    return "mock-" + std::string(to_string(source_)) + "-" + std::to_string(device_index_);
}

std::vector<PowerSample> MockPowerProvider::poll() {
    return {PowerSample{now_epoch_ms(), source_, device_index_, watts_}};
}

ReplayProvider::ReplayProvider(SampleSeries series) : samples_(series.samples()) {}

std::vector<PowerSample> ReplayProvider::poll() {
    if (next_ >= samples_.size()) return {};
    std::vector<PowerSample> group;
    const std::int64_t timestamp = samples_[next_].timestamp_ms;
    while (next_ < samples_.size() && samples_[next_].timestamp_ms == timestamp) {
        group.push_back(samples_[next_]);
        ++next_;
    }
    return group;
}

std::size_t ReplayProvider::remaining_ticks() const {
    std::size_t ticks = 0;
    std::size_t i = next_;
    while (i < samples_.size()) {
        const std::int64_t timestamp = samples_[i].timestamp_ms;
        while (i < samples_.size() && samples_[i].timestamp_ms == timestamp) ++i;
        ++ticks;
    }
    return ticks;
}

namespace {

std::optional<std::uint64_t> read_counter_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string content;
    std::getline(in, content);
    return try_parse_uint64(trim(content));
}

std::uint32_t width_for_range(std::uint64_t max_range_uj) {
    // Smallest width whose modulus covers the advertised range.
    const int width = std::bit_width(max_range_uj);
    return width == 0 ? 32u : static_cast<std::uint32_t>(width);
}

} // namespace

RaplSysfsReader::RaplSysfsReader(fs::path root) : root_(std::move(root)) {}

fs::path RaplSysfsReader::domain_dir(EnergyDomain domain, unsigned socket) const {
    const fs::path package = root_ / ("intel-rapl:" + std::to_string(socket));
    if (domain == EnergyDomain::CpuPackage) {
        return package;
    }
    // DRAM lives in a named subdomain of the package.
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(package, ec)) {
        std::ifstream name_file(entry.path() / "name");
        std::string name;
        if (name_file && std::getline(name_file, name) && trim(name) == "dram") {
            return entry.path();
        }
    }
    return package / "missing-dram";
}

bool RaplSysfsReader::has_domain(EnergyDomain domain, unsigned socket) const {
    return fs::exists(domain_dir(domain, socket) / "energy_uj");
}

std::vector<unsigned> RaplSysfsReader::sockets() const {
    std::vector<unsigned> found;
    for (unsigned socket = 0;; ++socket) {
        if (!fs::exists(root_ / ("intel-rapl:" + std::to_string(socket)))) break;
        found.push_back(socket);
    }
    return found;
}

EnergyCounterReading RaplSysfsReader::read(EnergyDomain domain, unsigned socket) const {
    const fs::path dir = domain_dir(domain, socket);
    const auto energy = read_counter_file(dir / "energy_uj");
    if (!energy) {
        throw EnvError("energy counter for domain '" + std::string(to_string(domain)) + "' socket " +
                       std::to_string(socket) + " is not available under " + root_.string());
    }
    std::uint32_t width = 32;
    if (const auto range = read_counter_file(dir / "max_energy_range_uj")) {
        width = width_for_range(*range);
    }
    return EnergyCounterReading{now_epoch_ms(), domain, *energy, width};
}

EnergyCounterReading read_cpu_energy(EnergyDomain domain) {
    return RaplSysfsReader().read(domain);
}

EnergyRateProvider::EnergyRateProvider(std::string name, Source source, std::uint32_t device_index, ReadFn read)
    : name_(std::move(name)), source_(source), device_index_(device_index), read_(std::move(read)) {}

std::vector<PowerSample> EnergyRateProvider::poll() {
    const EnergyCounterReading current = read_();
    if (!primed_) {
        previous_ = current;
        primed_ = true;
        return {};
    }
    const double watts = power_from_energy_delta(previous_, current);
    previous_ = current;
    return {PowerSample{current.timestamp_ms, source_, device_index_, watts}};
}

std::vector<ProviderPtr> EnergyRateProvider::discover(const RaplSysfsReader& reader) {
    std::vector<ProviderPtr> providers;
    for (const unsigned socket : reader.sockets()) {
        for (const EnergyDomain domain : {EnergyDomain::CpuPackage, EnergyDomain::Dram}) {
            if (!reader.has_domain(domain, socket)) continue;
            auto read = [reader, domain, socket] { return reader.read(domain, socket); };
            providers.push_back(std::make_shared<EnergyRateProvider>(
                std::string(to_string(domain)) + "-" + std::to_string(socket), to_source(domain), socket,
                std::move(read)));
        }
    }
    return providers;
}

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) {
        return result;
    }
    char buffer[512];
    while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) {
        result.output += buffer;
    }
    const int status = ::pclose(pipe);
    if (status >= 0 && WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

double parse_watts_field(std::string_view field, const std::string& command) {
    std::string_view text = trim(field);
    // Tolerate a trailing unit, e.g. "231.45 W".
    if (text.size() > 2 && (text.ends_with(" W") || text.ends_with(" w"))) {
        text = trim(text.substr(0, text.size() - 2));
    }
    const auto watts = try_parse_double(text);
    if (!watts || *watts < 0.0) {
        throw DataError("cannot parse power value '" + std::string(field) + "' from " + command);
    }
    return *watts;
}

} // namespace

GpuSmiProvider::GpuSmiProvider(std::string command) : command_(std::move(command)) {}

bool GpuSmiProvider::available() const {
    const auto result = run_command(command_ + " --query-gpu=count --format=csv,noheader");
    return result.exit_code == 0 && !trim(result.output).empty();
}

std::vector<PowerSample> GpuSmiProvider::poll() {
    const std::string query = command_ + " --query-gpu=index,power.draw --format=csv,noheader,nounits";
    const auto result = run_command(query);
    if (result.exit_code != 0) {
        throw EnvError("GPU management interface unavailable (command '" + command_ + "' exited with " +
                       std::to_string(result.exit_code) + ")");
    }
    const std::int64_t timestamp = now_epoch_ms();
    std::vector<PowerSample> samples;
    std::size_t begin = 0;
    while (begin < result.output.size()) {
        std::size_t end = result.output.find('\n', begin);
        if (end == std::string::npos) end = result.output.size();
        const std::string_view line = trim(std::string_view(result.output).substr(begin, end - begin));
        begin = end + 1;
        if (line.empty()) continue;

        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            throw DataError("unexpected GPU query line '" + std::string(line) + "'");
        }
        const auto index = try_parse_uint64(trim(fields[0]));
        if (!index || *index > 0xFFFFFFFFull) {
            throw DataError("bad GPU index '" + fields[0] + "'");
        }
        samples.push_back(PowerSample{timestamp, Source::Gpu, static_cast<std::uint32_t>(*index),
                                      parse_watts_field(fields[1], command_)});
    }
    if (samples.empty()) {
        throw EnvError("GPU management interface reported no devices");
    }
    return samples;
}

PowerSample read_gpu_power(std::uint32_t device_index, const std::string& command) {
    const std::string query = command + " --query-gpu=power.draw --format=csv,noheader,nounits -i " +
                              std::to_string(device_index);
    const auto result = run_command(query);
    if (result.exit_code != 0) {
        throw EnvError("GPU management interface unavailable (command '" + command + "' exited with " +
                       std::to_string(result.exit_code) + ")");
    }
    const std::string_view line = trim(result.output);
    if (line.empty()) {
        throw DataError("empty power query response for device " + std::to_string(device_index));
    }
    return PowerSample{now_epoch_ms(), Source::Gpu, device_index, parse_watts_field(line, command)};
}

} // namespace wattprint::telemetry
