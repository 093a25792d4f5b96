#ifndef LANESCHED_BENCH_HPP
#define LANESCHED_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lanesched/search.hpp"

namespace lanesched {

struct SuiteParams {
    int count = 200;
    int conn_min = 3, conn_max = 6;
    int veh_min = 4, veh_max = 20;
    std::uint64_t seed = 1;
    bool cycle_enforced = true;
    // Timing envelope of generated plans. The oracle preset widens max green
    // so no feasible path can overrun it.
    double min_green_lo = 0.0, min_green_hi = 4.0;
    double max_green_lo = 25.0, max_green_hi = 45.0;
    double intergreen_lo = 2.0, intergreen_hi = 4.0;
    double arr_span = 20.0;
    double dur_lo = 2.0, dur_hi = 4.0;

    static SuiteParams desk();          // 200 instances, 3-6 connections, 4-20 vehicles
    static SuiteParams paper_scale();   // 1200 instances, 3-6 connections, 4-46 vehicles
    static SuiteParams oracle_suite();  // 2-4 connections, 2-4 stages, 4-8 vehicles
};

/// Deterministic random instance. Stages partition the connections; arrivals
/// are uniform over the span with free-flow durations in [dur_lo, dur_hi].
Instance random_instance(const SuiteParams& p, std::uint64_t index);

std::vector<Instance> generate_suite(const SuiteParams& p);

struct BenchConfigSpec {
    std::string name;
    HeuristicKind heuristic = HeuristicKind::pdwspt;
    CheckSet checks = CheckSet::dominance_minmax();
};

/// The Table-1 configuration ladder: PDWSPT/ERIS with D,M / D / bare, then
/// Dijkstra with and without checks.
std::vector<BenchConfigSpec> default_bench_configs();

struct BenchRow {
    std::string config;
    std::uint64_t instances = 0;
    std::uint64_t failures = 0;
    // Milliseconds; rounded to 1e-3 so CSV round-trips are exact.
    double rt_mean = 0, rt_p25 = 0, rt_p50 = 0, rt_p75 = 0, rt_p95 = 0;
    // Expansion counts; rounded to 1e-1.
    double ex_mean = 0, ex_p25 = 0, ex_p50 = 0, ex_p75 = 0, ex_p95 = 0;

    bool operator==(const BenchRow& o) const = default;
};

struct BenchmarkReport {
    std::string suite; // descriptor: count, connection range, vehicle range
    std::vector<BenchRow> rows;

    bool operator==(const BenchmarkReport& o) const = default;
};

struct BenchOptions {
    double time_limit_ms = 5000.0;
    int repetitions = 3; // wall time medians; expansions are deterministic
    std::optional<bool> cycle_enforced;
    double h_sat = 2.0;
};

/// Runs every configuration on every instance, recording wall-time medians
/// over `repetitions` and the solver's expansion counts. Per-instance failures
/// are counted and the run continues.
BenchmarkReport run_benchmark(const std::vector<Instance>& suite,
                              const std::vector<BenchConfigSpec>& configs,
                              const BenchOptions& opts);

/// p in [0,100]; linear interpolation between order statistics.
double percentile(std::vector<double> values, double p);

enum class ReportFormat { csv, table };
std::string emit_report(const BenchmarkReport& report, ReportFormat format);
BenchmarkReport parse_report_csv(const std::string& text);

} // namespace lanesched

#endif
