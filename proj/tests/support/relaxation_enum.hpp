#ifndef LANESCHED_TESTS_RELAXATION_ENUM_HPP
#define LANESCHED_TESTS_RELAXATION_ENUM_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "lanesched/heuristics.hpp"

namespace lanesched::testing {

// Exhaustive minimum of the unit-slice relaxation objective over every
// preemptive unit schedule (one unit of one available job per slot; a waiting
// job accrues weight/dur per remaining unit per slot). Jobs need integer
// ready times and durations. Independent of the sweep implementation.
inline double enumerate_unit_optimum(const std::vector<RelaxedJob>& jobs) {
    const std::size_t n = jobs.size();
    if (n == 0) return 0.0;

    std::vector<int> rem(n);
    for (std::size_t i = 0; i < n; ++i) rem[i] = static_cast<int>(std::lround(jobs[i].dur));

    std::map<std::pair<int, std::vector<int>>, double> memo;
    std::function<double(int, std::vector<int>&)> go = [&](int t, std::vector<int>& r) -> double {
        bool all_done = true;
        for (int x : r)
            if (x > 0) {
                all_done = false;
                break;
            }
        if (all_done) return 0.0;
        const auto key = std::make_pair(t, r);
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        double base = 0.0;
        std::vector<std::size_t> avail;
        int next_ready = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < n; ++i) {
            if (r[i] <= 0) continue;
            const int ready = static_cast<int>(std::lround(jobs[i].ready));
            if (ready <= t) {
                avail.push_back(i);
                base += jobs[i].priority() * r[i];
            } else {
                next_ready = std::min(next_ready, ready);
            }
        }

        double best;
        if (avail.empty()) {
            best = go(next_ready, r); // nothing ready: jump without accrual
        } else {
            best = std::numeric_limits<double>::infinity();
            for (std::size_t i : avail) {
                const double slot_cost = base - jobs[i].priority() * r[i];
                r[i] -= 1;
                best = std::min(best, slot_cost + go(t + 1, r));
                r[i] += 1;
            }
        }
        memo[key] = best;
        return best;
    };
    return go(0, rem);
}

struct UnitSchedule {
    double slice = 1.0;
    double t0 = 0.0;
    std::vector<int> slot_job; // -1 = idle slot
};

// Greedy highest w/dur schedule discretized at `slice`; mirrors the
// preemptive rule (ties keep the running job).
inline UnitSchedule greedy_unit_schedule(const std::vector<RelaxedJob>& jobs, double slice) {
    UnitSchedule out;
    out.slice = slice;
    const std::size_t n = jobs.size();
    if (n == 0) return out;

    std::vector<double> rem(n);
    double first_ready = jobs[0].ready;
    for (std::size_t i = 0; i < n; ++i) {
        rem[i] = jobs[i].dur;
        first_ready = std::min(first_ready, jobs[i].ready);
    }
    out.t0 = first_ready;

    int running = -1;
    std::size_t done = 0;
    double t = first_ready;
    while (done < n) {
        int pick = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (rem[i] <= kTimeTol || time_greater(jobs[i].ready, t)) continue;
            if (pick < 0 || jobs[i].priority() > jobs[static_cast<std::size_t>(pick)].priority() + kTimeTol ||
                (!(jobs[static_cast<std::size_t>(pick)].priority() >
                   jobs[i].priority() + kTimeTol) &&
                 static_cast<int>(i) == running))
                pick = static_cast<int>(i);
        }
        out.slot_job.push_back(pick);
        if (pick >= 0) {
            rem[static_cast<std::size_t>(pick)] -= slice;
            running = pick;
            if (rem[static_cast<std::size_t>(pick)] <= kTimeTol) {
                rem[static_cast<std::size_t>(pick)] = 0.0;
                ++done;
                running = -1;
            }
        }
        t += slice;
    }
    return out;
}

// Slice objective of an arbitrary unit assignment; infinity when the
// assignment breaks readiness or serves more units than a job has.
inline double unit_schedule_objective(const std::vector<RelaxedJob>& jobs,
                                      const UnitSchedule& sched) {
    const std::size_t n = jobs.size();
    std::vector<double> rem(n);
    for (std::size_t i = 0; i < n; ++i) rem[i] = jobs[i].dur;
    double total = 0.0;
    for (std::size_t slot = 0; slot < sched.slot_job.size(); ++slot) {
        const double t = sched.t0 + static_cast<double>(slot) * sched.slice;
        const int pick = sched.slot_job[slot];
        if (pick >= 0) {
            const auto p = static_cast<std::size_t>(pick);
            if (time_greater(jobs[p].ready, t) || rem[p] <= kTimeTol)
                return std::numeric_limits<double>::infinity();
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<int>(i) == pick || rem[i] <= kTimeTol) continue;
            if (time_greater(jobs[i].ready, t)) continue;
            total += jobs[i].priority() * rem[i] * sched.slice;
        }
        if (pick >= 0) {
            auto& r = rem[static_cast<std::size_t>(pick)];
            r -= sched.slice;
            if (r <= kTimeTol) r = 0.0;
        }
    }
    for (double r : rem)
        if (r > kTimeTol) return std::numeric_limits<double>::infinity();
    return total;
}

} // namespace lanesched::testing

#endif
