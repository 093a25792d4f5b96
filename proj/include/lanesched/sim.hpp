#ifndef LANESCHED_SIM_HPP
#define LANESCHED_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lanesched/search.hpp"

namespace lanesched {

enum class PolicyKind { astar, fixed_time, actuated };

struct PolicyConfig {
    PolicyKind kind = PolicyKind::astar;
    SearchConfig search;        // astar only
    double fixed_split = 12.0;  // fixed_time: green seconds per stage
    double gap_out = 3.0;       // actuated: detector gap-out window
};

struct IntersectionSpec {
    std::string name;
    CyclePlan plan;
    PolicyConfig policy;
};

struct LinkSpec {
    int from_intersection = 0;
    int from_connection = 0;
    int to_intersection = 0;
    int to_connection = 0;
    double travel_time = 10.0;
};

struct DemandSpec {
    int intersection = 0;
    int connection = 0;
    double rate_per_hour = 0.0;
    double cross_time = 2.5; // free-flow crossing duration at the stop bar
};

struct NetworkModel {
    std::vector<IntersectionSpec> intersections;
    std::vector<LinkSpec> links;
    std::vector<DemandSpec> demand;
    double duration = 900.0;
    double dt = 0.1;
    double replan_period = 1.0;
    double horizon = 60.0;
    double h_sat = 2.0;
    double entry_lead = 15.0; // upstream detection lead for boundary arrivals
    // Gaussian noise (std dev, seconds) applied to sensed arrival estimates of
    // approaching vehicles. Zero: the planner sees true arrivals.
    double prediction_noise = 0.0;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

    void validate() const;
};

struct IntersectionMetrics {
    std::string name;
    std::uint64_t served = 0;
    double avg_delay = 0.0, std_delay = 0.0;
    double avg_stops = 0.0, std_stops = 0.0;
};

struct SimMetrics {
    std::uint64_t seed = 0;
    std::uint64_t injected = 0;
    std::uint64_t completed = 0;
    std::uint64_t in_network = 0;
    double avg_delay = 0.0, std_delay = 0.0; // per completed vehicle
    double avg_stops = 0.0, std_stops = 0.0;
    std::vector<IntersectionMetrics> per_intersection;
    std::uint64_t safety_violations = 0; // conflicting greens / broken clearances
    std::uint64_t green_bound_violations = 0;
    bool conservation_ok = true;
};

/// Poisson arrival stream: sorted arrival times over [0, duration) at
/// rate_per_hour, bit-reproducible for a given seed.
std::vector<double> generate_demand(double rate_per_hour, double duration, std::uint64_t seed);

/// Full closed-loop run of one seed: demand generation, per-second replanning,
/// schedule execution, downstream propagation, metric collection.
SimMetrics run_scenario(const NetworkModel& net, std::uint64_t seed);

/// One run per seed in net.seeds.
std::vector<SimMetrics> run_scenario_all_seeds(const NetworkModel& net);

/// One CSV row per (seed, intersection) plus a per-seed network aggregate.
std::string metrics_csv(const std::vector<SimMetrics>& runs);

NetworkModel load_scenario(const std::string& path);
NetworkModel load_scenario_text(const std::string& text, const std::string& origin = "<string>");
std::string write_scenario_text(const NetworkModel& net);

} // namespace lanesched

#endif
