#include "lanesched/oracle.hpp"

#include <array>
#include <limits>

namespace lanesched {

namespace {

struct Enumerator {
    const Instance& inst;
    const ServiceParams& params;
    std::uint64_t max_states;
    std::uint64_t explored = 0;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::array<int, 3>> best_path{};
    std::vector<std::array<int, 3>> path{};

    void dfs(const SearchState& state) {
        if (state.is_goal(inst)) {
            if (state.cum_delay < best) {
                best = state.cum_delay;
                best_path = path;
            }
            return;
        }
        for (int m : eligible_connections(state, inst, params)) {
            auto child = update_state(state, m, inst, params, HeuristicKind::none, nullptr);
            if (!child) continue;
            if (++explored > max_states)
                throw OracleLimitError("instance too large for oracle (state cap " +
                                       std::to_string(max_states) + " exceeded)");
            child->parent = nullptr; // the enumerator owns no pool; cut the dangling link
            path.push_back({m, child->served_first, child->served_count});
            dfs(*child);
            path.pop_back();
        }
    }
};

} // namespace

OracleResult brute_force_from(const SearchState& start, const Instance& inst,
                              const ServiceParams& params, std::uint64_t max_states) {
    Enumerator e{.inst = inst, .params = params, .max_states = max_states};
    SearchState root = start;
    root.parent = nullptr;
    e.dfs(root);
    OracleResult result;
    result.optimal_delay = e.best - start.cum_delay;
    result.optimal_sequence = std::move(e.best_path);
    result.explored = e.explored;
    return result;
}

OracleResult brute_force_optimal(const Instance& inst, std::uint64_t max_states,
                                 const SearchConfig& cfg) {
    inst.validate();
    if (inst.total_vehicles() > kOracleVehicleGuard)
        throw OracleLimitError("instance has " + std::to_string(inst.total_vehicles()) +
                               " vehicles; oracle guard is " +
                               std::to_string(kOracleVehicleGuard));
    const ServiceParams params = ServiceParams::resolve(inst, cfg);
    SearchState root = root_state(inst, params, HeuristicKind::none);
    OracleResult result = brute_force_from(root, inst, params, max_states);
    if (result.explored == 0) result.explored = 1; // empty instance: the root itself
    return result;
}

} // namespace lanesched
