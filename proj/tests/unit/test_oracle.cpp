#include <doctest.h>

#include "lanesched/bench.hpp"
#include "lanesched/oracle.hpp"
#include "support/fixtures.hpp"

using namespace lanesched;
using lanesched::testing::make_instance;
using lanesched::testing::make_plan;

TEST_CASE("hand-enumerated single-order instance") {
    // One connection, green from t = 0: v1 (arr 0, dep 2) crosses unimpeded;
    // v2 (arr 1, dep 3) finds the clock at 2 > 1, queues, delay 1.
    auto plan = make_plan(1, {{{0}, 0.0, 1000.0, 3.0}});
    Instance inst = make_instance(plan, {{0, 0.0, 2.0}, {0, 1.0, 3.0}});
    auto res = brute_force_optimal(inst);
    CHECK(res.optimal_delay == doctest::Approx(1.0));
    // Arrival gap equals the separation threshold, so the vehicles form two
    // single-vehicle clusters served back to back.
    REQUIRE(res.optimal_sequence.size() == 2);
    CHECK(res.optimal_sequence[0][0] == 0);
    CHECK(res.optimal_sequence[0][2] == 1);
    CHECK(res.optimal_sequence[1][1] == 1);
}

TEST_CASE("empty instance explores only the root") {
    Instance inst = lanesched::testing::two_connection_instance({});
    auto res = brute_force_optimal(inst);
    CHECK(res.optimal_delay == 0.0);
    CHECK(res.explored == 1);
}

TEST_CASE("symmetric conflict has a unique optimal value") {
    Instance inst = lanesched::testing::two_connection_instance({{0, 1.0, 3.0}, {1, 1.0, 3.0}});
    auto res = brute_force_optimal(inst);
    auto again = brute_force_optimal(inst);
    CHECK(res.optimal_delay == doctest::Approx(again.optimal_delay));
    CHECK(res.optimal_sequence == again.optimal_sequence); // deterministic
}

TEST_CASE("vehicle guard and state cap raise explicit errors") {
    std::vector<lanesched::testing::Veh> many;
    for (int i = 0; i < 13; ++i) many.push_back({0, i * 1.0, i * 1.0 + 2.0});
    Instance big = lanesched::testing::two_connection_instance(many);
    CHECK_THROWS_AS(brute_force_optimal(big), OracleLimitError);

    Instance small = lanesched::testing::two_connection_instance(
        {{0, 0.0, 2.0}, {0, 3.0, 5.0}, {1, 0.0, 2.0}, {1, 3.0, 5.0}});
    CHECK_THROWS_AS(brute_force_optimal(small, 2), OracleLimitError);
}

TEST_CASE("oracle lower-bounds any solver schedule on random small instances") {
    SuiteParams p = SuiteParams::oracle_suite();
    p.count = 10;
    p.seed = 42;
    for (int i = 0; i < p.count; ++i) {
        Instance inst = random_instance(p, static_cast<std::uint64_t>(i));
        auto oracle = brute_force_optimal(inst);
        SearchConfig cfg;
        cfg.checks = CheckSet::none();
        auto res = solve(inst, cfg);
        CAPTURE(i);
        CHECK(res.stats.optimal);
        CHECK(oracle.optimal_delay <= res.schedule.total_delay + 1e-6);
        CHECK(res.schedule.total_delay == doctest::Approx(oracle.optimal_delay).epsilon(1e-9));
    }
}
