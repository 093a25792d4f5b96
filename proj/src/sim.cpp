#include "lanesched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "lanesched/instance_io.hpp"

namespace lanesched {

void NetworkModel::validate() const {
    if (intersections.empty()) throw ValidationError("scenario has no intersections");
    for (const auto& i : intersections) {
        auto violations = validate_plan(i.plan);
        if (!violations.empty()) {
            std::string msg = "intersection " + i.name + ": invalid plan:";
            for (const auto& v : violations) msg += "\n  - " + v;
            throw ValidationError(msg);
        }
    }
    auto check_endpoint = [&](int ix, int conn, const std::string& what) {
        if (ix < 0 || ix >= static_cast<int>(intersections.size()))
            throw ValidationError(what + ": intersection index out of range");
        const auto& plan = intersections[static_cast<std::size_t>(ix)].plan;
        if (conn < 0 || conn >= plan.num_connections)
            throw ValidationError(what + ": connection index out of range");
    };
    for (const auto& l : links) {
        check_endpoint(l.from_intersection, l.from_connection, "link source");
        check_endpoint(l.to_intersection, l.to_connection, "link target");
        if (!(l.travel_time > 0.0)) throw ValidationError("link travel_time must be > 0");
    }
    for (const auto& d : demand) {
        check_endpoint(d.intersection, d.connection, "demand entry");
        if (d.rate_per_hour < 0.0) throw ValidationError("demand rate must be >= 0");
        if (!(d.cross_time > 0.0)) throw ValidationError("demand cross_time must be > 0");
    }
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (!(replan_period > 0.0)) throw ValidationError("replan_period must be > 0");
    if (!(duration >= 0.0)) throw ValidationError("duration must be >= 0");
    if (!(horizon > 0.0)) throw ValidationError("horizon must be > 0");
    if (!(h_sat > 0.0)) throw ValidationError("h_sat must be > 0");
    if (prediction_noise < 0.0) throw ValidationError("prediction_noise must be >= 0");
    if (seeds.empty()) throw ValidationError("scenario needs at least one seed");
}

std::vector<double> generate_demand(double rate_per_hour, double duration, std::uint64_t seed) {
    std::vector<double> arrivals;
    if (rate_per_hour <= 0.0) return arrivals;
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(rate_per_hour / 3600.0);
    double t = gap(rng);
    while (t < duration) {
        arrivals.push_back(t);
        t += gap(rng);
    }
    return arrivals;
}

namespace {

enum class Phase { approaching, queued, crossing, done };

struct SimVehicle {
    std::uint64_t id = 0;
    int intersection = 0;
    int connection = 0;
    double eta = 0.0; // unimpeded arrival at the current stop bar
    double cross_time = 2.5;
    Phase phase = Phase::approaching;
    double crossing_end = 0.0;
    double total_delay = 0.0;
    int stops = 0;
    bool stopped_here = false;
};

struct Prediction {
    std::uint64_t id = 0;
    int connection = 0;
    double eta = 0.0;
    double cross_time = 2.5;
};

struct Accumulator {
    std::uint64_t n = 0;
    double sum = 0.0, sumsq = 0.0;
    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
    double stddev() const {
        if (n == 0) return 0.0;
        const double m = mean();
        return std::sqrt(std::max(sumsq / static_cast<double>(n) - m * m, 0.0));
    }
};

struct Decision {
    bool fresh = false;
    std::size_t first_stage = 0; // stage position the newest schedule serves first
};

struct IntersectionRuntime {
    const IntersectionSpec* spec = nullptr;
    // Signal state.
    std::size_t stage = 0;
    double stage_start = 0.0;
    bool in_clearance = false;
    double clearance_end = 0.0;
    std::size_t next_stage = 0;
    double green_end = 0.0; // when the last green ended (for clearance checks)

    std::vector<std::deque<std::uint64_t>> queues;
    std::vector<double> last_discharge;
    std::vector<double> last_actuation; // per connection
    Decision decision;
    // Predictions keyed by upstream intersection; replaced on each publish.
    std::map<int, std::vector<Prediction>> incoming;

    Accumulator delay_acc, stop_acc;
    std::uint64_t served = 0;
};

struct LinkKey {
    int intersection;
    int connection;
    bool operator<(const LinkKey& o) const {
        return intersection != o.intersection ? intersection < o.intersection
                                              : connection < o.connection;
    }
};

bool stage_serves(const IntersectionRuntime& rt, int connection) {
    return !rt.in_clearance && rt.spec->plan.stage(rt.stage).serves(connection);
}

} // namespace

SimMetrics run_scenario(const NetworkModel& net, std::uint64_t seed) {
    net.validate();
    const double dt = net.dt;
    const double eps = 1e-9;

    std::vector<IntersectionRuntime> rts(net.intersections.size());
    for (std::size_t i = 0; i < rts.size(); ++i) {
        auto& rt = rts[i];
        rt.spec = &net.intersections[i];
        const auto m = static_cast<std::size_t>(rt.spec->plan.num_connections);
        rt.queues.resize(m);
        rt.last_discharge.assign(m, -1e18);
        rt.last_actuation.assign(m, 0.0);
        rt.stage = 0;
        rt.stage_start = 0.0;
    }

    std::map<LinkKey, const LinkSpec*> link_of;
    for (const auto& l : net.links) link_of[{l.from_intersection, l.from_connection}] = &l;

    // Pre-generated demand streams, one independent substream per entry.
    std::vector<std::vector<double>> streams(net.demand.size());
    std::vector<std::size_t> stream_pos(net.demand.size(), 0);
    for (std::size_t d = 0; d < net.demand.size(); ++d) {
        std::seed_seq sq{seed, static_cast<std::uint64_t>(d), std::uint64_t{0x73696d}};
        std::mt19937_64 mix(sq);
        streams[d] = generate_demand(net.demand[d].rate_per_hour, net.duration, mix());
    }

    std::vector<SimVehicle> vehicles;
    SimMetrics metrics;
    metrics.seed = seed;
    Accumulator net_delay, net_stops;
    std::uint64_t active = 0;

    const auto steps = static_cast<std::uint64_t>(std::llround(net.duration / dt));
    std::uint64_t next_replan_step = 0;
    const auto replan_every = static_cast<std::uint64_t>(std::llround(net.replan_period / dt));

    auto begin_crossing = [&](SimVehicle& v, double now) {
        IntersectionRuntime& rt = rts[static_cast<std::size_t>(v.intersection)];
        const double delay = std::max(now - v.eta, 0.0);
        v.total_delay += delay;
        rt.delay_acc.add(delay);
        rt.stop_acc.add(v.stopped_here ? 1.0 : 0.0);
        ++rt.served;
        v.phase = Phase::crossing;
        v.crossing_end = now + v.cross_time;
    };

    auto complete_stage_checks = [&](IntersectionRuntime& rt, double now) {
        const auto& st = rt.spec->plan.stage(rt.stage);
        const double sd = now - rt.stage_start;
        if (sd < st.min_green - dt - eps || sd > st.max_green + dt + eps)
            ++metrics.green_bound_violations;
    };

    for (std::uint64_t step = 0; step <= steps; ++step) {
        const double now = static_cast<double>(step) * dt;

        // 1. Clearance expiry -> activate the next stage.
        for (auto& rt : rts) {
            if (rt.in_clearance && now + eps >= rt.clearance_end) {
                if (rt.clearance_end - rt.green_end + eps <
                    rt.spec->plan.stage(rt.stage).intergreen)
                    ++metrics.safety_violations;
                rt.stage = rt.next_stage;
                rt.stage_start = rt.clearance_end;
                rt.in_clearance = false;
                rt.decision.fresh = false;
            }
        }

        // 2. Replanning at the 1 Hz cadence.
        if (step == next_replan_step) {
            next_replan_step += std::max<std::uint64_t>(replan_every, 1);
            std::map<int, std::map<int, std::vector<Prediction>>> staged; // to -> from -> preds
            for (std::size_t i = 0; i < rts.size(); ++i) {
                IntersectionRuntime& rt = rts[i];
                if (rt.spec->policy.kind != PolicyKind::astar) continue;

                // Sense vehicles and remember their ids in canonical order.
                std::vector<Detection> detections;
                std::vector<std::uint64_t> det_ids;
                std::unordered_set<std::uint64_t> sensed;
                for (const auto& v : vehicles) {
                    if (v.phase == Phase::done || v.phase == Phase::crossing) continue;
                    if (v.intersection != static_cast<int>(i)) continue;
                    double rel = std::max(v.eta - now, 0.0);
                    if (rel > net.horizon) continue;
                    if (net.prediction_noise > 0.0 && v.phase == Phase::approaching) {
                        std::seed_seq nq{seed, v.id, static_cast<std::uint64_t>(step),
                                         std::uint64_t{0x6e6f697365}};
                        std::mt19937_64 nrng(nq);
                        std::normal_distribution<double> noise(0.0, net.prediction_noise);
                        rel = std::max(rel + noise(nrng), 0.0);
                    }
                    Detection d;
                    d.connection = v.connection;
                    d.arr = rel;
                    d.dep = rel + v.cross_time;
                    d.queued = v.phase == Phase::queued;
                    detections.push_back(d);
                    det_ids.push_back(v.id);
                    sensed.insert(v.id);
                }
                for (const auto& [from, preds] : rt.incoming) {
                    (void)from;
                    for (const auto& p : preds) {
                        if (sensed.count(p.id)) continue;
                        const double rel = p.eta - now;
                        if (rel < 0.0 || rel > net.horizon) continue;
                        Detection d;
                        d.connection = p.connection;
                        d.arr = rel;
                        d.dep = rel + p.cross_time;
                        detections.push_back(d);
                        det_ids.push_back(p.id);
                    }
                }

                // Mirror build_clusters' canonical (stable) order to keep the
                // planner-index -> vehicle-id mapping.
                std::vector<std::size_t> order(detections.size());
                for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    const Detection& x = detections[a];
                    const Detection& y = detections[b];
                    if (x.connection != y.connection) return x.connection < y.connection;
                    if (x.arr != y.arr) return x.arr < y.arr;
                    if (x.dep != y.dep) return x.dep < y.dep;
                    return x.weight < y.weight;
                });
                const auto m_count = static_cast<std::size_t>(rt.spec->plan.num_connections);
                std::vector<std::vector<std::uint64_t>> ids_by_conn(m_count);
                for (std::size_t k : order)
                    ids_by_conn[static_cast<std::size_t>(detections[k].connection)].push_back(
                        det_ids[k]);

                Instance inst;
                inst.plan = rt.spec->plan;
                inst.horizon = net.horizon;
                inst.separation_gap = 1.0;
                inst.cluster_cap = 10.0;
                inst.sequences = build_clusters(detections, rt.spec->plan.num_connections,
                                                inst.separation_gap, inst.cluster_cap);
                if (rt.in_clearance) {
                    inst.controller.current_stage = rt.next_stage;
                    inst.controller.stage_start = rt.clearance_end - now;
                    inst.controller.elapsed = 0.0;
                } else {
                    inst.controller.current_stage = rt.stage;
                    inst.controller.stage_start = rt.stage_start - now;
                    inst.controller.elapsed = now - rt.stage_start;
                }
                inst.controller.current_connection =
                    rt.spec->plan.stage(inst.controller.current_stage).connections.front();
                inst.controller.queues.assign(m_count, 0);
                for (std::size_t m = 0; m < m_count; ++m)
                    inst.controller.queues[m] = static_cast<int>(rt.queues[m].size());

                SearchConfig cfg = rt.spec->policy.search;
                cfg.h_sat = net.h_sat;
                const SolveResult res = solve(inst, cfg);

                rt.decision.fresh = !res.schedule.entries.empty();
                if (rt.decision.fresh) {
                    const auto& first = res.schedule.entries.front();
                    rt.decision.first_stage = inst.plan.position_of(first.stage_id);
                }

                // Forward predicted departures to downstream neighbors.
                for (const auto& e : res.schedule.entries) {
                    const auto it = link_of.find(LinkKey{static_cast<int>(i), e.connection});
                    if (it == link_of.end()) continue;
                    const LinkSpec& link = *it->second;
                    const auto& delays =
                        res.schedule.vehicle_delays[static_cast<std::size_t>(e.connection)];
                    const auto& ids = ids_by_conn[static_cast<std::size_t>(e.connection)];
                    const auto& flat =
                        inst.sequences[static_cast<std::size_t>(e.connection)].flatten();
                    for (int k = 0; k < e.vehicle_count; ++k) {
                        const auto idx = static_cast<std::size_t>(e.first_vehicle + k);
                        if (idx >= flat.size() || idx >= ids.size() || idx >= delays.size())
                            continue;
                        const double service_start = now + flat[idx].arr + delays[idx];
                        Prediction p;
                        p.id = ids[idx];
                        p.connection = link.to_connection;
                        p.eta = service_start + flat[idx].dep - flat[idx].arr + link.travel_time;
                        p.cross_time = flat[idx].dep - flat[idx].arr;
                        staged[link.to_intersection][static_cast<int>(i)].push_back(p);
                    }
                }
            }
            // Message passing happens at the step boundary: apply after all
            // planners ran so no planner reads another's same-second output.
            for (auto& [to, by_from] : staged)
                for (auto& [from, preds] : by_from)
                    rts[static_cast<std::size_t>(to)].incoming[from] = std::move(preds);
        }

        // 3. Spawn boundary arrivals.
        for (std::size_t d = 0; d < streams.size(); ++d) {
            while (stream_pos[d] < streams[d].size() && streams[d][stream_pos[d]] <= now + eps) {
                const double detected = streams[d][stream_pos[d]++];
                SimVehicle v;
                v.id = vehicles.size();
                v.intersection = net.demand[d].intersection;
                v.connection = net.demand[d].connection;
                v.eta = detected + net.entry_lead;
                v.cross_time = net.demand[d].cross_time;
                vehicles.push_back(v);
                ++metrics.injected;
                ++active;
            }
        }

        // 4. Crossing completions: hand off along the link or exit.
        for (auto& v : vehicles) {
            if (v.phase != Phase::crossing || v.crossing_end > now + eps) continue;
            const auto it = link_of.find(LinkKey{v.intersection, v.connection});
            if (it != link_of.end()) {
                v.intersection = it->second->to_intersection;
                v.connection = it->second->to_connection;
                v.eta = v.crossing_end + it->second->travel_time;
                v.phase = Phase::approaching;
                v.stopped_here = false;
            } else {
                v.phase = Phase::done;
                net_delay.add(v.total_delay);
                net_stops.add(static_cast<double>(v.stops));
                ++metrics.completed;
                --active;
            }
        }

        // 5. Arrivals reaching the stop bar.
        for (auto& v : vehicles) {
            if (v.phase != Phase::approaching || v.eta > now + eps) continue;
            IntersectionRuntime& rt = rts[static_cast<std::size_t>(v.intersection)];
            const auto m = static_cast<std::size_t>(v.connection);
            rt.last_actuation[m] = now;
            if (stage_serves(rt, v.connection) && rt.queues[m].empty()) {
                begin_crossing(v, now);
            } else {
                v.phase = Phase::queued;
                v.stopped_here = true;
                ++v.stops;
                rt.queues[m].push_back(v.id);
            }
        }

        // 6. Queue discharge at the saturation headway.
        for (auto& rt : rts) {
            if (rt.in_clearance) continue;
            for (int m : rt.spec->plan.stage(rt.stage).connections) {
                auto& q = rt.queues[static_cast<std::size_t>(m)];
                if (q.empty()) continue;
                const double next_allowed =
                    std::max(rt.stage_start, rt.last_discharge[static_cast<std::size_t>(m)] +
                                                 net.h_sat);
                if (now + eps < next_allowed) continue;
                SimVehicle& v = vehicles[q.front()];
                q.pop_front();
                rt.last_discharge[static_cast<std::size_t>(m)] = now;
                rt.last_actuation[static_cast<std::size_t>(m)] = now;
                begin_crossing(v, now);
            }
        }

        // 7. Switching decisions.
        for (auto& rt : rts) {
            if (rt.in_clearance) continue;
            const auto& plan = rt.spec->plan;
            const auto& st = plan.stage(rt.stage);
            const double sd = now - rt.stage_start;
            const bool may_switch = sd + eps >= st.min_green;
            const bool must_switch = sd + eps >= st.max_green;

            bool wants = false;
            std::size_t target = plan.next(rt.stage);
            switch (rt.spec->policy.kind) {
            case PolicyKind::fixed_time:
                wants = sd + eps >= std::max(st.min_green, rt.spec->policy.fixed_split);
                break;
            case PolicyKind::actuated: {
                double last_act = rt.stage_start;
                for (int m : st.connections)
                    last_act = std::max(last_act, rt.last_actuation[static_cast<std::size_t>(m)]);
                const double gap_from = std::max(last_act, rt.stage_start + st.min_green);
                wants = now + eps >= gap_from + rt.spec->policy.gap_out;
                break;
            }
            case PolicyKind::astar: {
                if (rt.decision.fresh && rt.decision.first_stage != rt.stage) {
                    wants = true;
                    const bool enforced =
                        rt.spec->policy.search.cycle_enforced.value_or(plan.cycle_enforced);
                    target = enforced ? plan.next(rt.stage) : rt.decision.first_stage;
                }
                break;
            }
            }

            if ((wants && may_switch) || must_switch) {
                complete_stage_checks(rt, now);
                rt.green_end = now;
                rt.in_clearance = true;
                rt.clearance_end = now + st.intergreen;
                rt.next_stage = target;
                rt.decision.fresh = false;
            }
        }

        // Conservation: injected vehicles are either in the network or done.
        if (metrics.injected != metrics.completed + active) metrics.conservation_ok = false;
    }

    metrics.in_network = active;
    metrics.avg_delay = net_delay.mean();
    metrics.std_delay = net_delay.stddev();
    metrics.avg_stops = net_stops.mean();
    metrics.std_stops = net_stops.stddev();
    for (const auto& rt : rts) {
        IntersectionMetrics im;
        im.name = rt.spec->name;
        im.served = rt.served;
        im.avg_delay = rt.delay_acc.mean();
        im.std_delay = rt.delay_acc.stddev();
        im.avg_stops = rt.stop_acc.mean();
        im.std_stops = rt.stop_acc.stddev();
        metrics.per_intersection.push_back(std::move(im));
    }
    return metrics;
}

std::vector<SimMetrics> run_scenario_all_seeds(const NetworkModel& net) {
    std::vector<SimMetrics> out;
    for (std::uint64_t seed : net.seeds) out.push_back(run_scenario(net, seed));
    return out;
}

std::string metrics_csv(const std::vector<SimMetrics>& runs) {
    std::ostringstream out;
    out << "seed,intersection,vehicles,avg_delay_s,std_delay_s,avg_stops,std_stops,"
           "injected,completed,in_network,conservation_ok,safety_violations,"
           "green_bound_violations\n";
    auto row = [&out](const SimMetrics& m, const std::string& name, std::uint64_t vehicles,
                      double ad, double sdl, double as, double ss) {
        out << m.seed << ',' << name << ',' << vehicles << ',' << std::fixed
            << std::setprecision(4) << ad << ',' << sdl << ',' << as << ',' << ss << ','
            << m.injected << ',' << m.completed << ',' << m.in_network << ','
            << (m.conservation_ok ? 1 : 0) << ',' << m.safety_violations << ','
            << m.green_bound_violations << "\n";
        out << std::defaultfloat;
    };
    for (const auto& m : runs) {
        for (const auto& im : m.per_intersection)
            row(m, im.name, im.served, im.avg_delay, im.std_delay, im.avg_stops, im.std_stops);
        row(m, "network", m.completed, m.avg_delay, m.std_delay, m.avg_stops, m.std_stops);
    }
    return out.str();
}

namespace {

using ordered_json = nlohmann::ordered_json;

CyclePlan plan_from_json(const ordered_json& plan, const std::string& where) {
    CyclePlan out;
    if (!plan.contains("cycle_enforced"))
        throw ValidationError(where + ": missing key 'cycle_enforced'");
    out.cycle_enforced = plan["cycle_enforced"].get<bool>();
    if (!plan.contains("num_connections"))
        throw ValidationError(where + ": missing key 'num_connections'");
    out.num_connections = plan["num_connections"].get<int>();
    if (!plan.contains("stages") || !plan["stages"].is_array())
        throw ValidationError(where + ": missing 'stages' array");
    for (const auto& sj : plan["stages"]) {
        StageDefinition s;
        s.id = sj.at("id").get<int>();
        for (const auto& c : sj.at("connections")) s.connections.push_back(c.get<int>());
        std::sort(s.connections.begin(), s.connections.end());
        s.min_green = sj.at("min_green").get<double>();
        s.max_green = sj.at("max_green").get<double>();
        s.intergreen = sj.at("intergreen").get<double>();
        out.stages.push_back(std::move(s));
    }
    return out;
}

ordered_json plan_to_json(const CyclePlan& plan) {
    ordered_json pj;
    pj["cycle_enforced"] = plan.cycle_enforced;
    pj["num_connections"] = plan.num_connections;
    pj["stages"] = ordered_json::array();
    for (const auto& s : plan.stages) {
        ordered_json sj;
        sj["id"] = s.id;
        sj["connections"] = s.connections;
        sj["min_green"] = s.min_green;
        sj["max_green"] = s.max_green;
        sj["intergreen"] = s.intergreen;
        pj["stages"].push_back(std::move(sj));
    }
    return pj;
}

HeuristicKind heuristic_from_name(const std::string& name) {
    if (name == "pdwspt") return HeuristicKind::pdwspt;
    if (name == "eris") return HeuristicKind::eris;
    if (name == "none") return HeuristicKind::none;
    throw ValidationError("unknown heuristic '" + name + "' (pdwspt|eris|none)");
}

CheckSet checks_from_name(const std::string& name) {
    if (name == "all") return CheckSet::all();
    if (name == "dominance") return CheckSet::dominance_only();
    if (name == "minmax") return CheckSet{false, true, false};
    if (name == "dominance-minmax") return CheckSet::dominance_minmax();
    if (name == "none") return CheckSet::none();
    throw ValidationError("unknown check set '" + name +
                          "' (all|dominance|minmax|dominance-minmax|none)");
}

std::string checks_to_name(const CheckSet& c) {
    if (c.dominance && c.minmax && c.equivalence) return "all";
    if (c.dominance && c.minmax) return "dominance-minmax";
    if (c.dominance) return "dominance";
    if (c.minmax) return "minmax";
    return "none";
}

const char* heuristic_name(HeuristicKind k) {
    switch (k) {
    case HeuristicKind::pdwspt: return "pdwspt";
    case HeuristicKind::eris: return "eris";
    case HeuristicKind::none: return "none";
    }
    return "none";
}

} // namespace

NetworkModel load_scenario_text(const std::string& text, const std::string& origin) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
        throw ValidationError(origin + ": unsupported scenario format_version");

    NetworkModel net;
    net.duration = j.value("duration", net.duration);
    net.dt = j.value("dt", net.dt);
    net.replan_period = j.value("replan_period", net.replan_period);
    net.horizon = j.value("horizon", net.horizon);
    net.h_sat = j.value("h_sat", net.h_sat);
    net.entry_lead = j.value("entry_lead", net.entry_lead);
    net.prediction_noise = j.value("prediction_noise", net.prediction_noise);
    if (j.contains("seeds")) {
        net.seeds.clear();
        for (const auto& s : j["seeds"]) net.seeds.push_back(s.get<std::uint64_t>());
    }

    if (!j.contains("intersections") || !j["intersections"].is_array() ||
        j["intersections"].empty())
        throw ValidationError(origin + ": missing 'intersections' array");
    for (std::size_t i = 0; i < j["intersections"].size(); ++i) {
        const auto& ij = j["intersections"][i];
        IntersectionSpec spec;
        spec.name = ij.value("name", "int" + std::to_string(i));
        spec.plan = plan_from_json(ij.at("plan"),
                                   origin + ".intersections[" + std::to_string(i) + "].plan");
        if (ij.contains("policy")) {
            const auto& pj = ij["policy"];
            const std::string type = pj.value("type", "astar");
            if (type == "astar") {
                spec.policy.kind = PolicyKind::astar;
                spec.policy.search.heuristic =
                    heuristic_from_name(pj.value("heuristic", "pdwspt"));
                spec.policy.search.checks = checks_from_name(pj.value("checks", "all"));
                spec.policy.search.time_limit_ms = pj.value("time_limit_ms", 0.0);
                spec.policy.search.max_expansions =
                    pj.value("max_expansions", std::uint64_t{20000});
                if (pj.contains("cycle_enforced"))
                    spec.policy.search.cycle_enforced = pj["cycle_enforced"].get<bool>();
            } else if (type == "fixed_time") {
                spec.policy.kind = PolicyKind::fixed_time;
                spec.policy.fixed_split = pj.value("split", 12.0);
            } else if (type == "actuated") {
                spec.policy.kind = PolicyKind::actuated;
                spec.policy.gap_out = pj.value("gap_out", 3.0);
            } else {
                throw ValidationError(origin + ": unknown policy type '" + type + "'");
            }
        }
        net.intersections.push_back(std::move(spec));
    }
    if (j.contains("links")) {
        for (const auto& lj : j["links"]) {
            LinkSpec l;
            l.from_intersection = lj.at("from").at(0).get<int>();
            l.from_connection = lj.at("from").at(1).get<int>();
            l.to_intersection = lj.at("to").at(0).get<int>();
            l.to_connection = lj.at("to").at(1).get<int>();
            l.travel_time = lj.at("travel_time").get<double>();
            net.links.push_back(l);
        }
    }
    if (j.contains("demand")) {
        for (const auto& dj : j["demand"]) {
            DemandSpec d;
            d.intersection = dj.at("intersection").get<int>();
            d.connection = dj.at("connection").get<int>();
            d.rate_per_hour = dj.at("rate_per_hour").get<double>();
            d.cross_time = dj.value("cross_time", 2.5);
            net.demand.push_back(d);
        }
    }
    net.validate();
    return net;
}

NetworkModel load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str(), path);
}

std::string write_scenario_text(const NetworkModel& net) {
    ordered_json j;
    j["format_version"] = 1;
    j["duration"] = net.duration;
    j["dt"] = net.dt;
    j["replan_period"] = net.replan_period;
    j["horizon"] = net.horizon;
    j["h_sat"] = net.h_sat;
    j["entry_lead"] = net.entry_lead;
    j["prediction_noise"] = net.prediction_noise;
    j["seeds"] = net.seeds;
    j["intersections"] = ordered_json::array();
    for (const auto& spec : net.intersections) {
        ordered_json ij;
        ij["name"] = spec.name;
        ij["plan"] = plan_to_json(spec.plan);
        ordered_json pj;
        switch (spec.policy.kind) {
        case PolicyKind::astar:
            pj["type"] = "astar";
            pj["heuristic"] = heuristic_name(spec.policy.search.heuristic);
            pj["checks"] = checks_to_name(spec.policy.search.checks);
            pj["time_limit_ms"] = spec.policy.search.time_limit_ms;
            pj["max_expansions"] = spec.policy.search.max_expansions;
            if (spec.policy.search.cycle_enforced)
                pj["cycle_enforced"] = *spec.policy.search.cycle_enforced;
            break;
        case PolicyKind::fixed_time:
            pj["type"] = "fixed_time";
            pj["split"] = spec.policy.fixed_split;
            break;
        case PolicyKind::actuated:
            pj["type"] = "actuated";
            pj["gap_out"] = spec.policy.gap_out;
            break;
        }
        ij["policy"] = std::move(pj);
        j["intersections"].push_back(std::move(ij));
    }
    j["links"] = ordered_json::array();
    for (const auto& l : net.links) {
        ordered_json lj;
        lj["from"] = {l.from_intersection, l.from_connection};
        lj["to"] = {l.to_intersection, l.to_connection};
        lj["travel_time"] = l.travel_time;
        j["links"].push_back(std::move(lj));
    }
    j["demand"] = ordered_json::array();
    for (const auto& d : net.demand) {
        ordered_json dj;
        dj["intersection"] = d.intersection;
        dj["connection"] = d.connection;
        dj["rate_per_hour"] = d.rate_per_hour;
        dj["cross_time"] = d.cross_time;
        j["demand"].push_back(std::move(dj));
    }
    return j.dump(2) + "\n";
}

} // namespace lanesched
