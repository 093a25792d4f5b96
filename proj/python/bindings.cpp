#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "lanesched/bench.hpp"
#include "lanesched/heuristics.hpp"
#include "lanesched/instance_io.hpp"
#include "lanesched/oracle.hpp"
#include "lanesched/search.hpp"
#include "lanesched/sim.hpp"

namespace py = pybind11;
using ordered_json = nlohmann::ordered_json;

namespace {

lanesched::SearchConfig config_from_json(const std::string& config_json) {
    lanesched::SearchConfig cfg;
    if (config_json.empty()) return cfg;
    const auto j = ordered_json::parse(config_json);
    const std::string h = j.value("heuristic", "pdwspt");
    if (h == "pdwspt") cfg.heuristic = lanesched::HeuristicKind::pdwspt;
    else if (h == "eris") cfg.heuristic = lanesched::HeuristicKind::eris;
    else if (h == "none") cfg.heuristic = lanesched::HeuristicKind::none;
    else throw lanesched::ValidationError("unknown heuristic '" + h + "'");
    const std::string c = j.value("checks", "all");
    if (c == "all") cfg.checks = lanesched::CheckSet::all();
    else if (c == "dominance") cfg.checks = lanesched::CheckSet::dominance_only();
    else if (c == "dominance-minmax") cfg.checks = lanesched::CheckSet::dominance_minmax();
    else if (c == "minmax") cfg.checks = lanesched::CheckSet{false, true, false};
    else if (c == "none") cfg.checks = lanesched::CheckSet::none();
    else throw lanesched::ValidationError("unknown check set '" + c + "'");
    cfg.time_limit_ms = j.value("time_limit_ms", 0.0);
    cfg.max_expansions = j.value("max_expansions", std::uint64_t{0});
    cfg.h_sat = j.value("h_sat", 2.0);
    cfg.strict_dominance = j.value("strict_dominance", false);
    if (j.contains("cycle_enforced")) cfg.cycle_enforced = j["cycle_enforced"].get<bool>();
    if (j.contains("strict_traversal")) cfg.strict_traversal = j["strict_traversal"].get<bool>();
    return cfg;
}

std::string solve_json(const std::string& instance_json, const std::string& config_json) {
    const auto inst = lanesched::parse_instance_text(instance_json);
    const auto cfg = config_from_json(config_json);
    const auto res = lanesched::solve(inst, cfg);

    ordered_json j;
    j["total_delay"] = res.schedule.total_delay;
    j["entries"] = ordered_json::array();
    for (const auto& e : res.schedule.entries) {
        ordered_json ej;
        ej["connection"] = e.connection;
        ej["first_vehicle"] = e.first_vehicle;
        ej["vehicle_count"] = e.vehicle_count;
        ej["stage"] = e.stage_id;
        ej["stage_start"] = e.stage_start;
        ej["service_begin"] = e.service_begin;
        ej["service_end"] = e.service_end;
        ej["max_green_exceeded"] = e.max_green_exceeded;
        j["entries"].push_back(std::move(ej));
    }
    j["vehicle_delays"] = res.schedule.vehicle_delays;
    j["stats"] = {{"expansions", res.stats.expansions},
                  {"generated", res.stats.generated},
                  {"pruned_dominance", res.stats.pruned_dominance},
                  {"pruned_equivalence", res.stats.pruned_equivalence},
                  {"pruned_minmax", res.stats.pruned_minmax},
                  {"wall_time_s", res.stats.wall_time_s},
                  {"optimal", res.stats.optimal}};
    return j.dump();
}

std::string oracle_json(const std::string& instance_json, std::uint64_t max_states,
                        const std::string& config_json) {
    const auto inst = lanesched::parse_instance_text(instance_json);
    const auto cfg = config_from_json(config_json);
    const auto res = lanesched::brute_force_optimal(inst, max_states, cfg);
    ordered_json j;
    j["optimal_delay"] = res.optimal_delay;
    j["explored"] = res.explored;
    j["optimal_sequence"] = ordered_json::array();
    for (const auto& s : res.optimal_sequence)
        j["optimal_sequence"].push_back(
            {{"connection", s[0]}, {"first_vehicle", s[1]}, {"vehicle_count", s[2]}});
    return j.dump();
}

double heuristic_value(const std::string& instance_json, const std::string& kind) {
    const auto inst = lanesched::parse_instance_text(instance_json);
    lanesched::SearchConfig cfg;
    const auto params = lanesched::ServiceParams::resolve(inst, cfg);
    const auto root = lanesched::root_state(inst, params, lanesched::HeuristicKind::none);
    if (kind == "pdwspt") return lanesched::pdwspt_lower_bound(root, inst, params);
    if (kind == "eris") return lanesched::eris_lower_bound(root, inst, params);
    if (kind == "none") return 0.0;
    throw lanesched::ValidationError("unknown heuristic '" + kind + "'");
}

std::string canonical_instance(const std::string& instance_json) {
    return lanesched::write_instance_text(lanesched::parse_instance_text(instance_json));
}

std::string run_scenario_json(const std::string& scenario_json, std::uint64_t seed) {
    const auto net = lanesched::load_scenario_text(scenario_json);
    const auto m = lanesched::run_scenario(net, seed);
    ordered_json j;
    j["seed"] = m.seed;
    j["injected"] = m.injected;
    j["completed"] = m.completed;
    j["in_network"] = m.in_network;
    j["avg_delay"] = m.avg_delay;
    j["std_delay"] = m.std_delay;
    j["avg_stops"] = m.avg_stops;
    j["std_stops"] = m.std_stops;
    j["conservation_ok"] = m.conservation_ok;
    j["safety_violations"] = m.safety_violations;
    j["green_bound_violations"] = m.green_bound_violations;
    j["per_intersection"] = ordered_json::array();
    for (const auto& im : m.per_intersection)
        j["per_intersection"].push_back({{"name", im.name},
                                         {"served", im.served},
                                         {"avg_delay", im.avg_delay},
                                         {"avg_stops", im.avg_stops}});
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "lane-based intersection scheduling engine";

    py::register_exception<lanesched::ValidationError>(m, "InstanceError", PyExc_ValueError);
    py::register_exception<lanesched::OracleLimitError>(m, "OracleLimitError", PyExc_RuntimeError);

    m.def("solve_json", &solve_json, py::arg("instance_json"), py::arg("config_json") = "",
          "Solve an instance (JSON text); returns the schedule and stats as JSON.");
    m.def("oracle_json", &oracle_json, py::arg("instance_json"),
          py::arg("max_states") = 2000000, py::arg("config_json") = "",
          "Exhaustive optimum of a small instance; returns JSON.");
    m.def("heuristic_value", &heuristic_value, py::arg("instance_json"), py::arg("kind"),
          "Root-state lower bound (pdwspt|eris|none).");
    m.def("canonical_instance", &canonical_instance, py::arg("instance_json"),
          "Parse + re-serialize an instance to its canonical form.");
    m.def("run_scenario_json", &run_scenario_json, py::arg("scenario_json"), py::arg("seed"),
          "Closed-loop simulation of one seed; returns metrics as JSON.");
    m.attr("__version__") = "1.0.0";
}
