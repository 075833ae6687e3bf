#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wattprint/error.hpp"
#include "wattprint/ledger/fixture.hpp"
#include "wattprint/ledger/job_log.hpp"
#include "wattprint/ledger/summary.hpp"
#include "wattprint/report/render.hpp"
#include "wattprint/text.hpp"

using namespace wattprint;
using namespace wattprint::ledger;
using wattprint::report::display_round;

namespace {

JobRecord job(const std::string& id, std::int64_t start_ms, double hours, unsigned devices = 1,
              const std::string& hardware = "titan_x") {
    JobRecord record;
    record.job_id = id;
    record.start_ms = start_ms;
    record.end_ms = start_ms + static_cast<std::int64_t>(hours * 3'600'000.0);
    record.hardware = hardware;
    record.device_count = devices;
    return record;
}

void check_close(const ExperimentSummary& a, const ExperimentSummary& b) {
    CHECK(a.job_count == b.job_count);
    CHECK(a.window_start_ms == b.window_start_ms);
    CHECK(a.window_end_ms == b.window_end_ms);
    CHECK(a.min_job_hours == b.min_job_hours);
    CHECK(a.max_job_hours == b.max_job_hours);
    CHECK(a.total_device_hours == doctest::Approx(b.total_device_hours).epsilon(1e-9));
    CHECK(a.total_wall_hours == doctest::Approx(b.total_wall_hours).epsilon(1e-9));
    REQUIRE(a.device_hours_by_hardware.size() == b.device_hours_by_hardware.size());
    for (const auto& [kind, hours] : a.device_hours_by_hardware) {
        CHECK(hours == doctest::Approx(b.device_hours_by_hardware.at(kind)).epsilon(1e-9));
    }
}

} // namespace

TEST_CASE("job log parsing") {
    const std::string log =
        "job_id,start_iso8601,end_iso8601,hardware,device_count,avg_total_watts\n"
        "a,2017-10-02T00:00:00Z,2017-10-07T00:00:00Z,titan_x,1,\n"
        "b,2017-10-02T06:00:00Z,2017-10-02T07:30:00Z,m40,2,250.5\n"
        "c,2017-10-03T00:00:00Z,2017-10-03T00:03:00Z,titan_x,1,\n";

    std::istringstream in(log);
    const auto jobs = parse_job_log(in);
    REQUIRE(jobs.size() == 3);
    CHECK(jobs[0].wall_hours() == 120.0);
    CHECK(jobs[0].device_hours() == 120.0);
    CHECK_FALSE(jobs[0].avg_total_watts.has_value());
    CHECK(jobs[1].device_count == 2);
    CHECK(jobs[1].wall_hours() == 1.5);
    CHECK(jobs[1].device_hours() == 3.0);
    CHECK(jobs[1].avg_total_watts.value() == 250.5);
    CHECK(jobs[2].wall_hours() == doctest::Approx(0.05));

    SUBCASE("re-serializing yields the same records") {
        std::ostringstream out;
        write_job_log(jobs, out);
        std::istringstream back(out.str());
        CHECK(parse_job_log(back) == jobs);
    }
}

TEST_CASE("job log rejects bad lines with their numbers") {
    const std::string header = "job_id,start_iso8601,end_iso8601,hardware,device_count,avg_total_watts\n";

    std::istringstream reversed(header + "a,2017-10-02T01:00:00Z,2017-10-02T00:59:00Z,x,1,\n");
    CHECK_THROWS_WITH_AS(parse_job_log(reversed), doctest::Contains("line 2"), DataError);

    std::istringstream short_line(header + "a,2017-10-02T00:00:00Z\n");
    CHECK_THROWS_WITH_AS(parse_job_log(short_line), doctest::Contains("6 fields"), DataError);

    std::istringstream bad_ts(header + "a,yesterday,2017-10-02T01:00:00Z,x,1,\n");
    CHECK_THROWS_AS(parse_job_log(bad_ts), DataError);

    std::istringstream bad_count(header + "a,2017-10-02T00:00:00Z,2017-10-02T01:00:00Z,x,0,\n");
    CHECK_THROWS_AS(parse_job_log(bad_count), DataError);

    std::istringstream no_header("x\n");
    CHECK_THROWS_AS(parse_job_log(no_header), DataError);
}

TEST_CASE("summarize a single job") {
    const auto summary = summarize(std::vector<JobRecord>{job("a", 0, 120.0)});
    CHECK(summary.job_count == 1);
    CHECK(summary.total_device_hours == 120.0);
    CHECK(summary.total_wall_hours == 120.0);
    CHECK(summary.min_job_hours == 120.0);
    CHECK(summary.avg_job_hours() == 120.0);
    CHECK(summary.max_job_hours == 120.0);
    CHECK(summary.span_days() == 5.0);
    CHECK(summary.avg_concurrent_devices() == 1.0);
}

TEST_CASE("summarize counts device-hours, not wall-hours") {
    const std::vector<JobRecord> jobs = {job("a", 0, 10.0, 4), job("b", 0, 5.0, 1, "m40")};
    const auto summary = summarize(jobs);
    CHECK(summary.total_device_hours == 45.0);
    CHECK(summary.total_wall_hours == 15.0);
    CHECK(summary.avg_job_hours() == 7.5);
    CHECK(summary.device_hours_by_hardware.at("titan_x") == 40.0);
    CHECK(summary.device_hours_by_hardware.at("m40") == 5.0);
    CHECK(summary.hardware_share().at("titan_x") == doctest::Approx(40.0 / 45.0));
}

TEST_CASE("summarize rejects an empty list") {
    CHECK_THROWS_AS(summarize(std::vector<JobRecord>{}), DataError);
}

TEST_CASE("summaries are permutation-invariant and merge associatively") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> hours_dist(0.05, 216.0);
    std::uniform_int_distribution<std::int64_t> start_dist(0, 200LL * 86'400'000);
    std::uniform_int_distribution<unsigned> device_dist(1, 8);

    for (int round = 0; round < 20; ++round) {
        std::vector<JobRecord> jobs;
        const std::size_t n = 3 + rng() % 40;
        for (std::size_t i = 0; i < n; ++i) {
            jobs.push_back(job("j" + std::to_string(i), start_dist(rng), hours_dist(rng), device_dist(rng),
                               (rng() & 1) ? "titan_x" : "m40"));
        }
        const auto whole = summarize(jobs);

        std::vector<JobRecord> shuffled = jobs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        check_close(summarize(shuffled), whole);

        const std::size_t cut1 = 1 + rng() % (n - 2);
        const std::size_t cut2 = cut1 + 1 + rng() % (n - cut1 - 1);
        const auto s1 = summarize(std::span(jobs).subspan(0, cut1));
        const auto s2 = summarize(std::span(jobs).subspan(cut1, cut2 - cut1));
        const auto s3 = summarize(std::span(jobs).subspan(cut2));
        check_close(merge(merge(s1, s2), s3), whole);
        check_close(merge(s1, merge(s2, s3)), whole);
    }
}

TEST_CASE("scenario costs reproduce the published accounting rows") {
    const auto sheet = cost::PriceSheet::defaults();
    const footprint::FootprintConfig config;

    const auto one = scenario_costs(120.0, kDefaultJobWatts, "P100", sheet, config);
    CHECK(display_round(one.cloud.lower_usd) == 52);
    CHECK(display_round(one.cloud.upper_usd) == 175);
    CHECK(display_round(one.electricity_usd) == 5);

    const auto tune = scenario_costs(2880.0, kDefaultJobWatts, "P100", sheet, config);
    CHECK(display_round(tune.cloud.lower_usd) == 1238);
    CHECK(display_round(tune.cloud.upper_usd) == 4205);
    CHECK(display_round(tune.electricity_usd) == 118);

    const auto none = scenario_costs(0.0, kDefaultJobWatts, "P100", sheet, config);
    CHECK(none.cloud.lower_usd == 0.0);
    CHECK(none.cloud.upper_usd == 0.0);
    CHECK(none.electricity_usd == 0.0);

    SUBCASE("the 24-model row is 24 times the single-model row before rounding") {
        CHECK(tune.cloud.lower_usd == doctest::Approx(24.0 * one.cloud.lower_usd).epsilon(1e-12));
        CHECK(tune.cloud.upper_usd == doctest::Approx(24.0 * one.cloud.upper_usd).epsilon(1e-12));
        CHECK(tune.electricity_usd == doctest::Approx(24.0 * one.electricity_usd).epsilon(1e-12));
        CHECK(tune.kwh_pue == doctest::Approx(24.0 * one.kwh_pue).epsilon(1e-12));
    }

    SUBCASE("the default draw is the one consistent with the published electricity total") {
        // 0.12 * 239,942 h * w * 1.58 / 1000 = $9,870  =>  w = 216.955...
        const double solved = 9870.0 / (0.12 * 239'942.0 * 1.58 / 1000.0);
        CHECK(std::llround(solved) == 217);
        CHECK(kDefaultJobWatts == 217.0);
    }
}

TEST_CASE("weighted average watts") {
    std::vector<JobRecord> jobs = {job("a", 0, 10.0), job("b", 0, 30.0)};
    CHECK(weighted_avg_watts(jobs) == kDefaultJobWatts); // no explicit figures: exactly the default

    jobs[0].avg_total_watts = 100.0;
    jobs[1].avg_total_watts = 300.0;
    CHECK(weighted_avg_watts(jobs) == doctest::Approx((10.0 * 100.0 + 30.0 * 300.0) / 40.0));

    jobs[1].avg_total_watts.reset();
    CHECK(weighted_avg_watts(jobs, 200.0) == doctest::Approx((10.0 * 100.0 + 30.0 * 200.0) / 40.0));
}

TEST_CASE("synthetic log matches its aggregate targets") {
    const SyntheticLogSpec spec;
    const auto jobs = generate_synthetic_log(spec);
    REQUIRE(jobs.size() == spec.job_count);

    const auto summary = summarize(jobs);
    CHECK(summary.job_count == 4789);
    CHECK(std::abs(summary.total_device_hours - 239'942.0) <= 0.001 * 239'942.0);
    CHECK(summary.span_days() == 172.0);
    CHECK(summary.avg_concurrent_devices() == doctest::Approx(58.1).epsilon(0.004));
    CHECK(summary.min_job_hours >= 0.049);
    CHECK(summary.max_job_hours <= 216.001);
    CHECK(summary.hardware_share().at("titan_x") == doctest::Approx(0.72).epsilon(0.05));

    SUBCASE("fully deterministic") {
        CHECK(generate_synthetic_log(spec) == jobs);
    }

    SUBCASE("sorted by start time with sequential ids") {
        CHECK(jobs.front().job_id == "job-0001");
        CHECK(jobs.back().job_id == "job-4789");
        CHECK(std::is_sorted(jobs.begin(), jobs.end(),
                             [](const JobRecord& a, const JobRecord& b) { return a.start_ms < b.start_ms; }));
    }

    SUBCASE("round-trips through the log format") {
        std::ostringstream out;
        write_job_log(jobs, out);
        std::istringstream in(out.str());
        CHECK(parse_job_log(in) == jobs);
    }

    SUBCASE("small custom spec") {
        SyntheticLogSpec small;
        small.job_count = 50;
        small.total_device_hours = 2000.0;
        small.span_days = 30.0;
        const auto small_jobs = generate_synthetic_log(small);
        CHECK(small_jobs.size() == 50);
        const auto small_summary = summarize(small_jobs);
        CHECK(std::abs(small_summary.total_device_hours - 2000.0) <= 2.0);
        CHECK(small_summary.span_days() == 30.0);
    }

    SUBCASE("infeasible parameters are rejected") {
        SyntheticLogSpec bad;
        bad.job_count = 2;
        CHECK_THROWS_AS(generate_synthetic_log(bad), DataError);
        bad = SyntheticLogSpec{};
        bad.total_device_hours = 10.0; // cannot fit min+max anchors
        CHECK_THROWS_AS(generate_synthetic_log(bad), DataError);
    }
}
