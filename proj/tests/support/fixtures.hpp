#ifndef LANESCHED_TESTS_FIXTURES_HPP
#define LANESCHED_TESTS_FIXTURES_HPP

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "lanesched/domain.hpp"

namespace lanesched::testing {

struct StageSpec {
    std::vector<int> connections;
    double min_green = 0.0;
    double max_green = 1000.0;
    double intergreen = 3.0;
};

inline CyclePlan make_plan(int num_connections, std::vector<StageSpec> stages,
                           bool cycle_enforced = true) {
    CyclePlan plan;
    plan.num_connections = num_connections;
    plan.cycle_enforced = cycle_enforced;
    int id = 0;
    for (auto& s : stages) {
        StageDefinition st;
        st.id = id++;
        st.connections = s.connections;
        st.min_green = s.min_green;
        st.max_green = s.max_green;
        st.intergreen = s.intergreen;
        plan.stages.push_back(std::move(st));
    }
    return plan;
}

struct Veh {
    int connection;
    double arr;
    double dep;
    double weight = 1.0;
};

inline Instance make_instance(CyclePlan plan, std::vector<Veh> vehicles, double horizon = 200.0,
                              double separation_gap = 1.0, double cluster_cap = 10.0) {
    Instance inst;
    inst.plan = std::move(plan);
    inst.horizon = horizon;
    inst.separation_gap = separation_gap;
    inst.cluster_cap = cluster_cap;
    std::vector<Detection> detections;
    for (const auto& v : vehicles)
        detections.push_back(Detection{v.connection, v.arr, v.dep, v.weight, false});
    inst.sequences =
        build_clusters(std::move(detections), inst.plan.num_connections, separation_gap,
                       cluster_cap);
    inst.controller.current_stage = 0;
    inst.controller.current_connection = inst.plan.stages.front().connections.front();
    inst.controller.stage_start = 0.0;
    inst.controller.elapsed = 0.0;
    inst.controller.queues.assign(static_cast<std::size_t>(inst.plan.num_connections), 0);
    inst.validate();
    return inst;
}

/// Two stages {0}, {1}; generous greens unless overridden.
inline Instance two_connection_instance(std::vector<Veh> vehicles, double intergreen = 3.0,
                                        double min_green = 0.0, double max_green = 1000.0) {
    return make_instance(make_plan(2, {{{0}, min_green, max_green, intergreen},
                                       {{1}, min_green, max_green, intergreen}}),
                         std::move(vehicles));
}

/// The 8-stage, 8-connection ring from the worked example: stage i serves
/// connections {(i+7)%8, (i+3)%8}; connection 1 reappears only two stages
/// after the stage serving connections {2,6}.
inline CyclePlan ring_plan_8() {
    std::vector<StageSpec> stages;
    for (int i = 0; i < 8; ++i)
        stages.push_back(StageSpec{{(i + 7) % 8, (i + 3) % 8}, 2.0, 40.0, 3.0});
    for (auto& s : stages) std::sort(s.connections.begin(), s.connections.end());
    return make_plan(8, std::move(stages));
}

} // namespace lanesched::testing

#endif
