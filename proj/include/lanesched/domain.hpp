#ifndef LANESCHED_DOMAIN_HPP
#define LANESCHED_DOMAIN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "lanesched/common.hpp"

namespace lanesched {

/// One sensed vehicle approaching the intersection on connection `connection`.
/// `arr` and `dep` are the unimpeded arrival and departure times at the stop
/// bar in seconds; `dep - arr` is the free-flow crossing duration.
struct Vehicle {
    int connection = 0;
    double arr = 0.0;
    double dep = 0.0;
    bool queued = false;
    double weight = 1.0;

    double duration() const { return dep - arr; }
};

/// A maximal group of vehicles on one connection whose inter-arrival gaps are
/// below the separation threshold. The non-divisible scheduling job.
struct Cluster {
    int connection = 0;
    std::vector<Vehicle> vehicles;

    bool empty() const { return vehicles.empty(); }
    std::size_t size() const { return vehicles.size(); }
    double first_arrival() const { return vehicles.front().arr; }
    double last_arrival() const { return vehicles.back().arr; }
    double total_weight() const;
};

/// FIFO sequence of clusters on one connection.
struct ConnectionSequence {
    int connection = 0;
    std::vector<Cluster> clusters;

    std::size_t total_vehicles() const;
    /// Flattened arrival-ordered vehicles of this connection.
    std::vector<Vehicle> flatten() const;
};

struct StageDefinition {
    int id = 0;
    std::vector<int> connections; // sorted, unique
    double min_green = 0.0;
    double max_green = 0.0;
    double intergreen = 0.0; // yellow + red clearance following this stage

    bool serves(int connection) const;
};

/// Ordered stages forming the signal cycle. Stage positions (indices into
/// `stages`) are used throughout; `StageDefinition::id` is a label.
struct CyclePlan {
    std::vector<StageDefinition> stages;
    int num_connections = 0;
    bool cycle_enforced = true;

    std::size_t size() const { return stages.size(); }
    const StageDefinition& stage(std::size_t pos) const { return stages[pos]; }
    std::size_t next(std::size_t pos) const { return (pos + 1) % stages.size(); }
    /// Position of the stage with the given id; throws ValidationError if absent.
    std::size_t position_of(int stage_id) const;
};

struct ControllerState {
    std::size_t current_stage = 0;  // stage position
    int current_connection = 0;
    double stage_start = 0.0;       // seconds, may be negative (stage began in the past)
    double elapsed = 0.0;           // seconds already spent in the current stage
    std::vector<int> queues;        // per-connection queue counts
};

struct Instance {
    CyclePlan plan;
    std::vector<ConnectionSequence> sequences; // one per connection
    ControllerState controller;
    double horizon = 60.0;
    double separation_gap = 1.0;
    double cluster_cap = 10.0;

    int num_connections() const { return plan.num_connections; }
    std::size_t total_vehicles() const;
    /// Throws ValidationError listing every violation found.
    void validate() const;
};

/// Raw detection used to build clusters.
struct Detection {
    int connection = 0;
    double arr = 0.0;
    double dep = 0.0;
    double weight = 1.0;
    bool queued = false;
};

/// Groups detections into per-connection FIFO cluster sequences. Consecutive
/// vehicles with an arrival gap < separation_gap share a cluster unless the
/// cluster span would exceed cluster_cap, which starts a new cluster.
/// Canonical: detections are sorted by (connection, arr, dep, weight) first.
std::vector<ConnectionSequence> build_clusters(std::vector<Detection> detections,
                                               int num_connections,
                                               double separation_gap,
                                               double cluster_cap);

/// First stage at or after `from` in cyclic order whose connection set contains
/// `connection`. With the cycle lifted the same rule applies (it prefers `from`
/// itself and otherwise picks the cyclically nearest serving stage).
std::size_t nearest_stage(int connection, std::size_t from, const CyclePlan& plan);

/// Minimum time to switch from stage `from` to stage `to`: the sum of
/// intergreens of all stages traversed from `from` up to (excluding) `to`,
/// plus the min greens of strictly intervening stages when `strict_traversal`.
/// Zero when from == to.
double min_switch(std::size_t from, std::size_t to, const CyclePlan& plan, bool strict_traversal);

/// Cost of closing stage `s` and coming back to it: a full cycle of
/// intergreens (+ intervening min greens when strict) with the cycle enforced,
/// a direct self-transition intergreen otherwise.
double reopen_cost(std::size_t s, const CyclePlan& plan, bool strict_traversal);

/// Checks every CyclePlan invariant and returns all violations (empty = ok).
std::vector<std::string> validate_plan(const CyclePlan& plan);

} // namespace lanesched

#endif
