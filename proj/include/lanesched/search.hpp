#ifndef LANESCHED_SEARCH_HPP
#define LANESCHED_SEARCH_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lanesched/heuristics.hpp"
#include "lanesched/state.hpp"

namespace lanesched {

/// One serviced cluster slice of the timing plan produced by trace-back.
struct ScheduleEntry {
    int connection = 0;
    int first_vehicle = 0; // index into the connection's flattened vehicles
    int vehicle_count = 0;
    int stage_id = 0;
    double stage_start = 0.0;
    double service_begin = 0.0;
    double service_end = 0.0;
    bool max_green_exceeded = false;
};

struct Schedule {
    std::vector<ScheduleEntry> entries;
    double total_delay = 0.0;
    // Per-connection, per-vehicle delays (arrival order).
    std::vector<std::vector<double>> vehicle_delays;
};

struct SearchStats {
    std::uint64_t expansions = 0;  // update_state calls (state updates)
    std::uint64_t generated = 0;   // states inserted into the open queue
    std::uint64_t pruned_dominance = 0;
    std::uint64_t pruned_equivalence = 0;
    std::uint64_t pruned_minmax = 0;
    double wall_time_s = 0.0;
    bool optimal = false;          // proved optimal vs. best-within-budget
};

struct SolveResult {
    Schedule schedule;
    SearchStats stats;
};

/// queueingDelay(t_m, q_m): if the service clock is strictly past the arrival
/// the vehicle is queued, discharges at the saturation headway and bumps the
/// queue count; otherwise it crosses unimpeded and a discharging queue drains.
/// Returns (effective departure, new queue count).
std::pair<double, int> queueing_delay(double t_m, int q_m, const Vehicle& v,
                                      const ServiceParams& params);

SearchState root_state(const Instance& inst, const ServiceParams& params, HeuristicKind h);

/// The next unserved cluster slice on a connection (continuation of a
/// truncated cluster when N_m is mid-cluster). count == 0 when exhausted.
struct PendingJob {
    int connection = 0;
    int first_vehicle = 0;      // flattened index on the connection
    int offset = 0;             // index within *cluster
    int count = 0;
    const Cluster* cluster = nullptr;
};
PendingJob pending_job(const SearchState& s, const Instance& inst, int connection);

/// Applies one cluster-slice service to `parent` (Algorithm-style transition:
/// nearest stage, switch shift, per-vehicle delay/queue/clock updates,
/// max-green break). Returns nullopt only when the connection has no
/// remaining vehicles. The heuristic of the child is computed with `h`.
std::optional<SearchState> update_state(const SearchState& parent, int connection,
                                        const Instance& inst, const ServiceParams& params,
                                        HeuristicKind h, SearchStats* stats = nullptr);

/// Spec-shaped wrapper: validates that `c` is exactly the pending slice on its
/// connection (throws ContractViolation otherwise).
SearchState update_state(const SearchState& parent, const Cluster& c, const Instance& inst,
                         const ServiceParams& params, HeuristicKind h = HeuristicKind::none);

/// Connections legal to expand from `s`: they have remaining vehicles and,
/// under an enforced cycle, no stage strictly between the current stage and
/// their nearest stage still has unserved vehicles.
std::vector<int> eligible_connections(const SearchState& s, const Instance& inst,
                                      const ServiceParams& params);

/// Frontier states retained per (N, m) key; no retained state dominates
/// another under the same key.
class DominanceTable {
public:
    /// Returns true when `s` should be kept (and records it); prunes dominated
    /// retained states by flagging them. `s` must outlive the table.
    bool admit(SearchState& s, bool strict_queues);
    /// Check half of admit: false when a retained state dominates `s`;
    /// otherwise evicts retained states dominated by `s`.
    bool check_and_evict(const SearchState& s, bool strict_queues);
    /// Registers a surviving state under its key (address must be stable).
    void insert(SearchState& s);
    std::size_t size() const { return entries_.size(); }

private:
    struct Key {
        std::vector<int> served;
        int connection;
        bool operator==(const Key& o) const {
            return connection == o.connection && served == o.served;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    std::unordered_map<Key, std::vector<SearchState*>, KeyHash> entries_;
};

struct Searcher; // internal

/// Best-first tree search on f = d + h with no closed list. Anytime: on
/// budget exhaustion the most advanced frontier state is completed greedily so
/// a full schedule is always returned.
SolveResult a_star(const Instance& inst, const SearchConfig& cfg);

/// Library surface: validates, then runs a_star.
SolveResult solve(const Instance& inst, const SearchConfig& cfg);

/// Parent-chain trace-back into a time-ordered schedule; total_delay equals
/// the goal state's cumulative delay.
Schedule trace_schedule(const SearchState& goal, const Instance& inst,
                        const ServiceParams& params);

} // namespace lanesched

#endif
