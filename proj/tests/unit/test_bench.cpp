#include <doctest.h>

#include "lanesched/bench.hpp"
#include "lanesched/instance_io.hpp"

using namespace lanesched;

TEST_CASE("percentile interpolation") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(percentile(v, 0.0) == doctest::Approx(1.0));
    CHECK(percentile(v, 100.0) == doctest::Approx(4.0));
    CHECK(percentile(v, 50.0) == doctest::Approx(2.5));
    CHECK(percentile({7.0}, 95.0) == doctest::Approx(7.0));
}

TEST_CASE("suite generation is deterministic under a seed") {
    SuiteParams p = SuiteParams::oracle_suite();
    p.count = 5;
    p.seed = 9;
    auto a = generate_suite(p);
    auto b = generate_suite(p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(write_instance_text(a[i]) == write_instance_text(b[i]));
}

TEST_CASE("paper-scale preset matches the documented ranges") {
    auto p = SuiteParams::paper_scale();
    CHECK(p.count == 1200);
    CHECK(p.conn_min == 3);
    CHECK(p.conn_max == 6);
    CHECK(p.veh_min == 4);
    CHECK(p.veh_max == 46);
}

TEST_CASE("empty count yields an empty suite") {
    SuiteParams p = SuiteParams::desk();
    p.count = 0;
    CHECK(generate_suite(p).empty());
}

TEST_CASE("benchmark on a single trivial instance: percentiles collapse") {
    SuiteParams p = SuiteParams::oracle_suite();
    p.count = 1;
    p.veh_min = p.veh_max = 4;
    auto suite = generate_suite(p);
    BenchOptions opts;
    opts.repetitions = 1;
    auto report = run_benchmark(suite, {{"PDWSPT+D,M", HeuristicKind::pdwspt,
                                         CheckSet::dominance_minmax()}},
                                opts);
    REQUIRE(report.rows.size() == 1);
    const auto& r = report.rows[0];
    CHECK(r.instances == 1);
    CHECK(r.failures == 0);
    CHECK(r.ex_p25 == doctest::Approx(r.ex_p95));
    CHECK(r.ex_mean == doctest::Approx(r.ex_p50));
    // Percentiles are nondecreasing within a row.
    CHECK(r.rt_p25 <= r.rt_p50);
    CHECK(r.rt_p50 <= r.rt_p75);
    CHECK(r.rt_p75 <= r.rt_p95);
}

TEST_CASE("csv report round-trips exactly") {
    BenchmarkReport report;
    report.suite = "3 instances, 2-4 connections, 4-8 vehicles";
    BenchRow row;
    row.config = "PDWSPT+D,M";
    row.instances = 3;
    row.rt_mean = 1.234;
    row.rt_p25 = 0.5;
    row.rt_p50 = 1.0;
    row.rt_p75 = 1.75;
    row.rt_p95 = 2.001;
    row.ex_mean = 120.5;
    row.ex_p25 = 80.0;
    row.ex_p50 = 120.0;
    row.ex_p75 = 160.0;
    row.ex_p95 = 170.0;
    report.rows.push_back(row);

    const std::string csv = emit_report(report, ReportFormat::csv);
    const BenchmarkReport parsed = parse_report_csv(csv);
    CHECK(parsed == report);
    CHECK(emit_report(parsed, ReportFormat::csv) == csv);
}

TEST_CASE("empty report emits a header-only csv") {
    BenchmarkReport report;
    const std::string csv = emit_report(report, ReportFormat::csv);
    CHECK(csv.find("config,instances,failures") != std::string::npos);
    const auto parsed = parse_report_csv(csv);
    CHECK(parsed.rows.empty());
}

TEST_CASE("table format carries both column groups") {
    BenchmarkReport report;
    report.suite = "1 instances, 2-2 connections, 4-4 vehicles";
    BenchRow row;
    row.config = "Dijkstra";
    report.rows.push_back(row);
    const std::string table = emit_report(report, ReportFormat::table);
    CHECK(table.find("Run-Time (ms)") != std::string::npos);
    CHECK(table.find("Number of Expansions") != std::string::npos);
    CHECK(table.find("Dijkstra") != std::string::npos);
}

TEST_CASE("default configuration ladder matches the ablation set") {
    auto configs = default_bench_configs();
    REQUIRE(configs.size() == 8);
    CHECK(configs.front().name == "PDWSPT+D,M");
    CHECK(configs.back().name == "Dijkstra");
}
