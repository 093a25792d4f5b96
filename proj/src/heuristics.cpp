#include "lanesched/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace lanesched {

std::vector<double> permitted_starts(const SearchState& s, const Instance& inst,
                                     const ServiceParams& params) {
    const auto m_count = static_cast<std::size_t>(inst.num_connections());
    std::vector<double> ps(m_count, 0.0);
    const CyclePlan& plan = inst.plan;
    const double stage_end =
        s.stage_start + std::max(s.stage_duration, plan.stage(s.stage).min_green);

    for (std::size_t m = 0; m < m_count; ++m) {
        const std::size_t target = nearest_stage(static_cast<int>(m), s.stage, plan);
        if (target == s.stage) {
            ps[m] = std::max(s.finish_times[m], s.stage_start);
        } else {
            const double chain = min_switch(s.stage, target, plan, params.strict_traversal);
            ps[m] = std::max(s.finish_times[m], stage_end + chain);
        }
    }
    return ps;
}

namespace {

// Lower bound on the time a service advances the connection clock. A vehicle
// reached strictly past its arrival discharges at the saturation headway; one
// reached at or before it can still end up queued in some schedule, so only
// min(dur, h_sat) is guaranteed.
double guaranteed_advance(double clock, const Vehicle& v, const ServiceParams& params) {
    if (time_greater(clock, v.arr)) return params.h_sat;
    return std::min(v.duration(), params.h_sat);
}

} // namespace

std::vector<RelaxedJob> build_relaxed_jobs(const SearchState& s, const Instance& inst,
                                           const ServiceParams& params, double* shift_delay) {
    const std::vector<double> ps = permitted_starts(s, inst, params);
    std::vector<RelaxedJob> jobs;
    double delta1 = 0.0;

    for (std::size_t m = 0; m < ps.size(); ++m) {
        const auto& seq = inst.sequences[m];
        const std::size_t first = static_cast<std::size_t>(s.served[m]);
        if (first >= seq.total_vehicles()) continue;
        const std::size_t stage = nearest_stage(static_cast<int>(m), s.stage, inst.plan);

        double clock = ps[m];
        std::size_t index = 0;
        for (const auto& c : seq.clusters) {
            for (const auto& v : c.vehicles) {
                if (index++ < first) continue;
                const double shifted = std::max(v.arr, clock);
                delta1 += shifted - v.arr;
                const double p = guaranteed_advance(clock, v, params);
                jobs.push_back(RelaxedJob{static_cast<int>(m), stage, shifted, p, v.weight});
                clock = shifted + p;
            }
        }
    }
    if (shift_delay) *shift_delay = delta1;
    return jobs;
}

std::vector<RelaxedJob> merge_compatible(std::vector<RelaxedJob> jobs) {
    std::sort(jobs.begin(), jobs.end(), [](const RelaxedJob& a, const RelaxedJob& b) {
        if (a.ready != b.ready) return a.ready < b.ready;
        if (a.connection != b.connection) return a.connection < b.connection;
        return a.dur < b.dur;
    });
    std::vector<RelaxedJob> out;
    std::unordered_map<std::size_t, std::size_t> open; // stage -> index of its open merged job
    for (const RelaxedJob& j : jobs) {
        auto it = open.find(j.stage);
        if (it != open.end()) {
            RelaxedJob& group = out[it->second];
            if (time_less(j.ready, group.end())) {
                const double end = std::max(group.end(), j.end());
                group.weight += j.weight;
                group.dur = end - group.ready;
                continue;
            }
        }
        open[j.stage] = out.size();
        out.push_back(j);
    }
    return out;
}

double pdwspt_priority_sweep(std::vector<RelaxedJob> jobs) {
    if (jobs.empty()) return 0.0;
    std::sort(jobs.begin(), jobs.end(), [](const RelaxedJob& a, const RelaxedJob& b) {
        if (a.ready != b.ready) return a.ready < b.ready;
        if (a.connection != b.connection) return a.connection < b.connection;
        return a.dur < b.dur;
    });

    const std::size_t n = jobs.size();
    std::vector<double> rem(n);
    std::vector<double> prio(n);
    for (std::size_t i = 0; i < n; ++i) {
        rem[i] = jobs[i].dur;
        prio[i] = jobs[i].priority();
    }

    double total = 0.0;
    double t = jobs.front().ready;
    std::size_t next_arrival = 0;
    std::size_t running = n; // n = none
    std::size_t done = 0;

    while (done < n) {
        while (next_arrival < n && !time_greater(jobs[next_arrival].ready, t)) ++next_arrival;

        // Highest w/dur among arrived unfinished jobs; ties keep the running job.
        std::size_t pick = n;
        for (std::size_t i = 0; i < next_arrival; ++i) {
            if (rem[i] <= kTimeTol) continue;
            if (pick == n || prio[i] > prio[pick] + kTimeTol ||
                (!(prio[pick] > prio[i] + kTimeTol) && i == running))
                pick = i;
        }
        if (pick == n) { // nothing arrived yet: jump to the next release
            t = jobs[next_arrival].ready;
            continue;
        }
        running = pick;

        double until = t + rem[pick];
        if (next_arrival < n) until = std::min(until, jobs[next_arrival].ready);
        const double dt = until - t;

        // Unit-slice relaxation objective: a waiting job accrues w/dur per
        // remaining unit per second of waiting.
        for (std::size_t i = 0; i < next_arrival; ++i) {
            if (i == pick || rem[i] <= kTimeTol) continue;
            total += prio[i] * rem[i] * dt;
        }
        rem[pick] -= dt;
        if (rem[pick] <= kTimeTol) {
            rem[pick] = 0.0;
            ++done;
            running = n;
        }
        t = until;
    }
    return total;
}

double pdwspt_lower_bound(const SearchState& s, const Instance& inst,
                          const ServiceParams& params) {
    double delta1 = 0.0;
    std::vector<RelaxedJob> jobs = build_relaxed_jobs(s, inst, params, &delta1);
    if (jobs.empty()) return 0.0;
    return delta1 + pdwspt_priority_sweep(merge_compatible(std::move(jobs)));
}

double eris_lower_bound(const SearchState& s, const Instance& inst,
                        const ServiceParams& params) {
    // Per-stage-group preemptive subproblems: within a group connections run in
    // parallel, so each subproblem reduces to its connections' FIFO shifts from
    // the permitted starts. Cross-group contention is dropped entirely.
    double delta1 = 0.0;
    std::vector<RelaxedJob> jobs = build_relaxed_jobs(s, inst, params, &delta1);
    if (jobs.empty()) return 0.0;

    std::unordered_map<std::size_t, std::vector<RelaxedJob>> groups;
    for (auto& j : jobs) groups[j.stage].push_back(j);
    double total = 0.0;
    for (auto& [stage, group] : groups) {
        (void)stage;
        total += pdwspt_priority_sweep(merge_compatible(std::move(group)));
    }
    return delta1 + total;
}

double compute_heuristic(HeuristicKind kind, const SearchState& s, const Instance& inst,
                         const ServiceParams& params) {
    switch (kind) {
    case HeuristicKind::pdwspt: return pdwspt_lower_bound(s, inst, params);
    case HeuristicKind::eris: return eris_lower_bound(s, inst, params);
    case HeuristicKind::none: return 0.0;
    }
    return 0.0;
}

} // namespace lanesched
