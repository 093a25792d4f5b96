#ifndef LANESCHED_STATE_HPP
#define LANESCHED_STATE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lanesched/domain.hpp"

namespace lanesched {

enum class HeuristicKind { pdwspt, eris, none };

struct CheckSet {
    bool dominance = false;
    bool minmax = false;
    bool equivalence = false;

    static CheckSet none() { return {}; }
    static CheckSet all() { return {true, true, true}; }
    static CheckSet dominance_only() { return {true, false, false}; }
    static CheckSet dominance_minmax() { return {true, true, false}; }
};

struct SearchConfig {
    HeuristicKind heuristic = HeuristicKind::pdwspt;
    CheckSet checks = CheckSet::all();
    std::optional<bool> cycle_enforced;   // overrides the plan's flag
    std::optional<bool> strict_traversal; // default: same as cycle_enforced
    double time_limit_ms = 0.0;           // 0 = unlimited
    std::uint64_t max_expansions = 0;     // 0 = unlimited; deterministic budget
    double h_sat = 2.0;                   // saturation headway, seconds
    bool strict_dominance = false;        // also require queue-componentwise dominance

    // Called for every state popped for expansion (profiling / verification).
    std::function<void(const struct SearchState&)> on_expand;
};

/// Plan-level knobs resolved once per solve, shared by transitions and bounds.
struct ServiceParams {
    double h_sat = 2.0;
    bool cycle_enforced = true;
    bool strict_traversal = true;

    static ServiceParams resolve(const Instance& inst, const SearchConfig& cfg) {
        ServiceParams p;
        p.h_sat = cfg.h_sat;
        p.cycle_enforced = cfg.cycle_enforced.value_or(inst.plan.cycle_enforced);
        p.strict_traversal = cfg.strict_traversal.value_or(p.cycle_enforced);
        return p;
    }
};

/// One node of the A* tree: the paper's 8-tuple plus served-vehicle counts
/// and trace-back bookkeeping. f = cum_delay + heuristic is the priority key.
struct SearchState {
    std::size_t stage = 0;        // s
    int connection = -1;          // m, last-served connection
    double stage_duration = 0.0;  // sd
    double stage_start = 0.0;     // start_s
    std::vector<double> finish_times; // t, length M
    std::vector<int> queues;          // q, length M
    std::vector<int> served;          // N, length M
    double cum_delay = 0.0;       // d, the g value
    double heuristic = 0.0;       // h

    const SearchState* parent = nullptr;
    std::uint64_t seq = 0;        // generation order, for tie-breaking

    // How this state was produced (empty for the root).
    int served_first = 0;         // index of first vehicle served on `connection`
    int served_count = 0;
    double service_begin = 0.0;   // availability when service started
    bool max_green_exceeded = false;
    bool opened_stage = false;    // transition changed (or reopened) the stage

    // Lazily set when a dominance entry gets evicted; skipped on pop.
    bool dominated = false;

    double f() const { return cum_delay + heuristic; }
    bool is_goal(const Instance& inst) const {
        for (std::size_t m = 0; m < served.size(); ++m)
            if (static_cast<std::size_t>(served[m]) < inst.sequences[m].total_vehicles())
                return false;
        return true;
    }
};

} // namespace lanesched

#endif
