#include "lanesched/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <queue>
#include <sstream>

namespace lanesched {

namespace {

// Serves vehicles of one cluster slice in arrival order, stopping once the
// stage duration has passed max green (the straddling vehicle is still served;
// the remainder becomes a continuation job).
struct SliceOutcome {
    int served = 0;
    double avail = 0.0;
    double stage_duration = 0.0;
    int queue = 0;
    double delay = 0.0;
};

SliceOutcome serve_slice(double avail, double stage_duration, double stage_start, int queue,
                         const Cluster& cluster, int offset, int count, double max_green,
                         const ServiceParams& params, std::vector<double>* vehicle_delays) {
    SliceOutcome out{0, avail, stage_duration, queue, 0.0};
    for (int i = 0; i < count; ++i) {
        if (time_greater(out.stage_duration, max_green)) break;
        const Vehicle& v = cluster.vehicles[static_cast<std::size_t>(offset + i)];
        auto [dep_eff, q_next] = queueing_delay(out.avail, out.queue, v, params);
        const double delay = std::max(out.avail - v.arr, 0.0);
        out.delay += delay;
        if (vehicle_delays) vehicle_delays->push_back(delay);
        out.avail = std::max(v.arr, out.avail) + (dep_eff - v.arr);
        out.queue = q_next;
        out.stage_duration = std::max(out.stage_duration, out.avail - stage_start);
        ++out.served;
    }
    return out;
}

bool stages_disjoint(const StageDefinition& a, const StageDefinition& b) {
    for (int m : a.connections)
        if (b.serves(m)) return false;
    return true;
}

} // namespace

std::pair<double, int> queueing_delay(double t_m, int q_m, const Vehicle& v,
                                      const ServiceParams& params) {
    if (time_greater(t_m, v.arr)) {
        // Queued: discharges at the saturation headway.
        return {v.arr + params.h_sat, q_m + 1};
    }
    return {v.dep, std::max(q_m - 1, 0)};
}

SearchState root_state(const Instance& inst, const ServiceParams& params, HeuristicKind h) {
    const auto m = static_cast<std::size_t>(inst.num_connections());
    SearchState r;
    r.stage = inst.controller.current_stage;
    r.connection = inst.controller.current_connection;
    r.stage_start = inst.controller.stage_start;
    r.stage_duration = inst.controller.elapsed;
    r.finish_times.assign(m, 0.0);
    r.queues = inst.controller.queues;
    if (r.queues.size() != m) r.queues.assign(m, 0);
    r.served.assign(m, 0);
    r.heuristic = compute_heuristic(h, r, inst, params);
    return r;
}

PendingJob pending_job(const SearchState& s, const Instance& inst, int connection) {
    PendingJob job;
    job.connection = connection;
    const auto& seq = inst.sequences[static_cast<std::size_t>(connection)];
    int skip = s.served[static_cast<std::size_t>(connection)];
    job.first_vehicle = skip;
    for (const auto& c : seq.clusters) {
        const int n = static_cast<int>(c.size());
        if (skip >= n) {
            skip -= n;
            continue;
        }
        job.cluster = &c;
        job.offset = skip;
        job.count = n - skip;
        return job;
    }
    return job; // count == 0: connection exhausted
}

std::optional<SearchState> update_state(const SearchState& parent, int connection,
                                        const Instance& inst, const ServiceParams& params,
                                        HeuristicKind h, SearchStats* stats) {
    const PendingJob job = pending_job(parent, inst, connection);
    if (job.count == 0) return std::nullopt;
    if (stats) ++stats->expansions;

    const CyclePlan& plan = inst.plan;
    std::size_t s = nearest_stage(connection, parent.stage, plan);
    const StageDefinition& parent_stage = plan.stage(parent.stage);

    // Staying in a stage that already ran past max green would serve nothing:
    // close the stage and come back to it instead.
    const bool reopen =
        s == parent.stage && time_greater(parent.stage_duration, plan.stage(s).max_green);

    SearchState child;
    child.stage = s;
    child.connection = connection;
    child.finish_times = parent.finish_times;
    child.queues = parent.queues;
    child.served = parent.served;
    child.cum_delay = parent.cum_delay;
    child.parent = &parent;
    child.served_first = job.first_vehicle;

    double avail = child.finish_times[static_cast<std::size_t>(connection)];
    if (s != parent.stage || reopen) {
        // The current stage cannot end before its min green has elapsed.
        const double stage_end =
            parent.stage_start + std::max(parent.stage_duration, parent_stage.min_green);
        const double chain = reopen ? reopen_cost(parent.stage, plan, params.strict_traversal)
                                    : min_switch(parent.stage, s, plan, params.strict_traversal);
        avail = std::max(avail, stage_end + chain);
        child.stage_start = avail;
        child.stage_duration = 0.0;
        child.opened_stage = true;
    } else {
        avail = std::max(avail, parent.stage_start);
        child.stage_start = parent.stage_start;
        child.stage_duration = parent.stage_duration;
    }
    child.service_begin = avail;

    const StageDefinition& st = plan.stage(s);
    const SliceOutcome outcome =
        serve_slice(avail, child.stage_duration, child.stage_start,
                    child.queues[static_cast<std::size_t>(connection)], *job.cluster, job.offset,
                    job.count, st.max_green, params, nullptr);
    if (outcome.served == 0) return std::nullopt; // unreachable after the reopen guard

    child.finish_times[static_cast<std::size_t>(connection)] = outcome.avail;
    child.queues[static_cast<std::size_t>(connection)] = outcome.queue;
    child.served[static_cast<std::size_t>(connection)] += outcome.served;
    child.served_count = outcome.served;
    child.cum_delay += outcome.delay;
    child.stage_duration = outcome.stage_duration;
    child.max_green_exceeded = time_greater(child.stage_duration, st.max_green);
    child.heuristic = compute_heuristic(h, child, inst, params);
    return child;
}

SearchState update_state(const SearchState& parent, const Cluster& c, const Instance& inst,
                         const ServiceParams& params, HeuristicKind h) {
    const PendingJob job = pending_job(parent, inst, c.connection);
    bool matches = job.count == static_cast<int>(c.size()) && job.cluster != nullptr;
    if (matches) {
        for (int i = 0; i < job.count; ++i) {
            const Vehicle& a = job.cluster->vehicles[static_cast<std::size_t>(job.offset + i)];
            const Vehicle& b = c.vehicles[static_cast<std::size_t>(i)];
            if (!time_eq(a.arr, b.arr) || !time_eq(a.dep, b.dep)) {
                matches = false;
                break;
            }
        }
    }
    if (!matches) {
        std::ostringstream msg;
        msg << "cluster on connection " << c.connection
            << " is not the next unserved job in FIFO order";
        throw ContractViolation(msg.str());
    }
    auto child = update_state(parent, c.connection, inst, params, h, nullptr);
    if (!child) throw ContractViolation("connection has no remaining vehicles");
    return *child;
}

std::vector<int> eligible_connections(const SearchState& s, const Instance& inst,
                                      const ServiceParams& params) {
    const int m_count = inst.num_connections();
    std::vector<bool> pending(static_cast<std::size_t>(m_count));
    for (int m = 0; m < m_count; ++m)
        pending[static_cast<std::size_t>(m)] =
            static_cast<std::size_t>(s.served[static_cast<std::size_t>(m)]) <
            inst.sequences[static_cast<std::size_t>(m)].total_vehicles();

    std::vector<int> out;
    for (int m = 0; m < m_count; ++m) {
        if (!pending[static_cast<std::size_t>(m)]) continue;
        if (params.cycle_enforced) {
            // Serving m must not jump past a stage that still has demand.
            const std::size_t target = nearest_stage(m, s.stage, inst.plan);
            bool blocked = false;
            if (target != s.stage) {
                for (std::size_t pos = inst.plan.next(s.stage); pos != target;
                     pos = inst.plan.next(pos)) {
                    for (int k : inst.plan.stage(pos).connections)
                        if (pending[static_cast<std::size_t>(k)]) {
                            blocked = true;
                            break;
                        }
                    if (blocked) break;
                }
            }
            if (blocked) continue;
        }
        out.push_back(m);
    }
    return out;
}

std::size_t DominanceTable::KeyHash::operator()(const Key& k) const {
    std::size_t h = std::hash<int>()(k.connection);
    for (int v : k.served) h = h * 1000003u + static_cast<std::size_t>(v) + 0x9e3779b9u;
    return h;
}

namespace {

bool dominates(const SearchState& a, const SearchState& b, bool strict_queues) {
    if (time_greater(a.cum_delay, b.cum_delay)) return false;
    for (std::size_t k = 0; k < a.finish_times.size(); ++k)
        if (time_greater(a.finish_times[k], b.finish_times[k])) return false;
    if (strict_queues)
        for (std::size_t k = 0; k < a.queues.size(); ++k)
            if (a.queues[k] > b.queues[k]) return false;
    return true;
}

} // namespace

bool DominanceTable::check_and_evict(const SearchState& s, bool strict_queues) {
    Key key{s.served, s.connection};
    auto& list = entries_[key];
    for (SearchState* retained : list)
        if (dominates(*retained, s, strict_queues)) return false; // ties prune the newcomer
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](SearchState* retained) {
                                  if (dominates(s, *retained, strict_queues)) {
                                      retained->dominated = true;
                                      return true;
                                  }
                                  return false;
                              }),
               list.end());
    return true;
}

void DominanceTable::insert(SearchState& s) {
    entries_[Key{s.served, s.connection}].push_back(&s);
}

bool DominanceTable::admit(SearchState& s, bool strict_queues) {
    if (!check_and_evict(s, strict_queues)) return false;
    insert(s);
    return true;
}

namespace {

struct OpenEntry {
    double f;
    double d;
    std::uint64_t seq;
    SearchState* node;
};

struct OpenWorse {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.d != b.d) return a.d < b.d; // deeper (higher d) preferred on f ties
        return a.seq > b.seq;
    }
};

struct EquivKey {
    std::size_t stage;
    std::vector<int> served;
    bool operator==(const EquivKey& o) const { return stage == o.stage && served == o.served; }
};

struct EquivKeyHash {
    std::size_t operator()(const EquivKey& k) const {
        std::size_t h = k.stage;
        for (int v : k.served) h = h * 1000003u + static_cast<std::size_t>(v) + 0x9e3779b9u;
        return h;
    }
};

int total_served(const SearchState& s) {
    int n = 0;
    for (int v : s.served) n += v;
    return n;
}

} // namespace

Schedule trace_schedule(const SearchState& goal, const Instance& inst,
                        const ServiceParams& params) {
    std::vector<const SearchState*> chain;
    for (const SearchState* s = &goal; s != nullptr; s = s->parent) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());

    Schedule sched;
    sched.total_delay = goal.cum_delay;
    sched.vehicle_delays.resize(static_cast<std::size_t>(inst.num_connections()));

    for (std::size_t i = 1; i < chain.size(); ++i) {
        const SearchState* st = chain[i];
        const SearchState* parent = chain[i - 1];
        if (st->parent != parent)
            throw InternalError("broken parent chain in trace_schedule");
        const auto m = static_cast<std::size_t>(st->connection);

        PendingJob job = pending_job(*parent, inst, st->connection);
        std::vector<double> delays;
        serve_slice(st->service_begin, st->opened_stage ? 0.0 : parent->stage_duration,
                    st->stage_start, parent->queues[m], *job.cluster, job.offset, st->served_count,
                    inst.plan.stage(st->stage).max_green, params, &delays);

        auto& per_conn = sched.vehicle_delays[m];
        if (static_cast<int>(per_conn.size()) != st->served_first)
            per_conn.resize(static_cast<std::size_t>(st->served_first), 0.0);
        per_conn.insert(per_conn.end(), delays.begin(), delays.end());

        ScheduleEntry e;
        e.connection = st->connection;
        e.first_vehicle = st->served_first;
        e.vehicle_count = st->served_count;
        e.stage_id = inst.plan.stage(st->stage).id;
        e.stage_start = st->stage_start;
        e.service_begin = st->service_begin;
        e.service_end = st->finish_times[m];
        e.max_green_exceeded = st->max_green_exceeded;
        sched.entries.push_back(e);
    }

    std::stable_sort(sched.entries.begin(), sched.entries.end(),
                     [](const ScheduleEntry& a, const ScheduleEntry& b) {
                         if (a.service_begin != b.service_begin)
                             return a.service_begin < b.service_begin;
                         return a.connection < b.connection;
                     });
    return sched;
}

namespace {

// Completes `from` by always serving the earliest-arriving eligible cluster.
// Appends states to the pool so the result stays traceable.
const SearchState* greedy_complete(const SearchState* from, const Instance& inst,
                                   const ServiceParams& params, std::deque<SearchState>& pool,
                                   SearchStats& stats) {
    const SearchState* cur = from;
    while (!cur->is_goal(inst)) {
        const auto eligible = eligible_connections(*cur, inst, params);
        if (eligible.empty()) throw InternalError("no eligible connection on incomplete state");
        int best_m = eligible.front();
        double best_arr = 0.0;
        bool first = true;
        for (int m : eligible) {
            const PendingJob job = pending_job(*cur, inst, m);
            const double arr = job.cluster->vehicles[static_cast<std::size_t>(job.offset)].arr;
            if (first || time_less(arr, best_arr)) {
                best_arr = arr;
                best_m = m;
                first = false;
            }
        }
        auto child = update_state(*cur, best_m, inst, params, HeuristicKind::none, &stats);
        if (!child) throw InternalError("eligible connection produced no child");
        pool.push_back(std::move(*child));
        cur = &pool.back();
    }
    return cur;
}

} // namespace

SolveResult a_star(const Instance& inst, const SearchConfig& cfg) {
    const ServiceParams params = ServiceParams::resolve(inst, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    SolveResult result;
    SearchStats& stats = result.stats;

    std::deque<SearchState> pool;
    pool.push_back(root_state(inst, params, cfg.heuristic));
    SearchState* root = &pool.front();

    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenWorse> open;
    DominanceTable table;
    std::unordered_set<EquivKey, EquivKeyHash> expanded_boundaries;
    std::uint64_t seq = 0;

    open.push(OpenEntry{root->f(), root->cum_delay, root->seq, root});

    const SearchState* best_partial = root;
    int best_partial_served = total_served(*root);
    const SearchState* goal = nullptr;
    bool budget_hit = false;

    while (!open.empty()) {
        if ((cfg.time_limit_ms > 0.0 && elapsed_ms() > cfg.time_limit_ms) ||
            (cfg.max_expansions > 0 && stats.expansions >= cfg.max_expansions)) {
            budget_hit = true;
            break;
        }
        const OpenEntry top = open.top();
        open.pop();
        SearchState* node = top.node;
        if (node->dominated) continue;
        if (node->is_goal(inst)) {
            goal = node;
            break;
        }
        if (cfg.on_expand) cfg.on_expand(*node);

        // expandNeighbors: build all children, then apply the max/min sets and
        // the dominance/equivalence checks before queue insertion.
        std::vector<SearchState> min_set, cand_set, max_set;
        for (int m : eligible_connections(*node, inst, params)) {
            auto child = update_state(*node, m, inst, params, cfg.heuristic, &stats);
            if (!child) continue;
            if (!cfg.checks.minmax) {
                cand_set.push_back(std::move(*child));
            } else if (child->max_green_exceeded) {
                max_set.push_back(std::move(*child));
            } else if (!child->opened_stage &&
                       time_less(child->stage_duration, inst.plan.stage(child->stage).min_green)) {
                min_set.push_back(std::move(*child));
            } else {
                cand_set.push_back(std::move(*child));
            }
        }
        std::vector<SearchState>* chosen = &cand_set;
        if (cfg.checks.minmax) {
            if (!min_set.empty())
                chosen = &min_set; // service inside the committed min-green window comes first
            else if (cand_set.empty())
                chosen = &max_set; // nothing else to expand: overrun rather than stall
            stats.pruned_minmax += min_set.size() + cand_set.size() + max_set.size() - chosen->size();
        }

        for (SearchState& child : *chosen) {
            // The equivalence hash is cheaper than a dominance scan, so
            // permutation-redundant states are dropped first.
            if (cfg.checks.equivalence && params.cycle_enforced && child.opened_stage &&
                child.stage != node->stage &&
                stages_disjoint(inst.plan.stage(child.stage), inst.plan.stage(node->stage))) {
                EquivKey key{child.stage, child.served};
                if (!expanded_boundaries.insert(std::move(key)).second) {
                    ++stats.pruned_equivalence;
                    continue;
                }
            }
            if (cfg.checks.dominance && !table.check_and_evict(child, cfg.strict_dominance)) {
                ++stats.pruned_dominance;
                continue;
            }
            child.seq = ++seq;
            pool.push_back(std::move(child));
            SearchState* stored = &pool.back();
            if (cfg.checks.dominance) table.insert(*stored);
            open.push(OpenEntry{stored->f(), stored->cum_delay, stored->seq, stored});
            ++stats.generated;

            const int served_now = total_served(*stored);
            if (served_now > best_partial_served ||
                (served_now == best_partial_served && stored->f() < best_partial->f())) {
                best_partial = stored;
                best_partial_served = served_now;
            }
        }
    }

    if (goal != nullptr) {
        stats.optimal = true;
        result.schedule = trace_schedule(*goal, inst, params);
    } else {
        // Budget exhausted (or frontier emptied under pruning): return the best
        // suboptimal schedule by completing the most advanced frontier state.
        (void)budget_hit;
        stats.optimal = false;
        const SearchState* done = greedy_complete(best_partial, inst, params, pool, stats);
        result.schedule = trace_schedule(*done, inst, params);
    }
    stats.wall_time_s = elapsed_ms() / 1000.0;
    return result;
}

SolveResult solve(const Instance& inst, const SearchConfig& cfg) {
    inst.validate();
    if (cfg.h_sat <= 0.0) throw ValidationError("h_sat must be > 0");
    return a_star(inst, cfg);
}

} // namespace lanesched
