#ifndef LANESCHED_HEURISTICS_HPP
#define LANESCHED_HEURISTICS_HPP

#include <vector>

#include "lanesched/state.hpp"

namespace lanesched {

/// A remaining vehicle translated into the single-server relaxation: ready
/// time shifted to the connection's permitted start, processing time per the
/// queueing model, priority w/dur.
struct RelaxedJob {
    int connection = 0;
    std::size_t stage = 0;
    double ready = 0.0;
    double dur = 0.0;
    double weight = 1.0;

    double priority() const { return weight / dur; }
    double end() const { return ready + dur; }
};

/// Earliest time each connection's next unserved vehicle could begin service:
/// the connection clock pushed past the current stage's committed end plus the
/// cyclic switching chain (intergreens, and intervening min greens when
/// strict_traversal).
std::vector<double> permitted_starts(const SearchState& s, const Instance& inst,
                                     const ServiceParams& params);

/// Shifts every unserved vehicle to its permitted start preserving per-
/// connection FIFO. Returns the relaxed jobs; accumulates the unavoidable
/// shift delay into *shift_delay if non-null.
std::vector<RelaxedJob> build_relaxed_jobs(const SearchState& s, const Instance& inst,
                                           const ServiceParams& params, double* shift_delay);

/// Greedily merges overlapping same-stage jobs (sorted by ready) into combined
/// jobs with summed weight and end time max of the ends.
std::vector<RelaxedJob> merge_compatible(std::vector<RelaxedJob> jobs);

/// Event-driven preemptive single-server sweep under the w/dur priority rule
/// (ties keep the running job). Returns the total weighted delay of the
/// unit-slice relaxation: a waiting job with `rem` work left accrues
/// weight/dur * rem per unit of waiting. Exact optimum of the relaxation.
double pdwspt_priority_sweep(std::vector<RelaxedJob> jobs);

/// Connection-based PDWSPT lower bound on remaining delay (shift + sweep).
double pdwspt_lower_bound(const SearchState& s, const Instance& inst,
                          const ServiceParams& params);

/// Baseline bound: per-stage-group preemptive subproblems solved
/// independently from the permitted starts, delays summed.
double eris_lower_bound(const SearchState& s, const Instance& inst,
                        const ServiceParams& params);

inline double zero_heuristic(const SearchState&, const Instance&, const ServiceParams&) {
    return 0.0;
}

double compute_heuristic(HeuristicKind kind, const SearchState& s, const Instance& inst,
                         const ServiceParams& params);

} // namespace lanesched

#endif
