#include "lanesched/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lanesched {

namespace {

using ordered_json = nlohmann::ordered_json;

const ordered_json& require(const ordered_json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(where + ": missing key '" + key + "'");
    return *it;
}

double require_number(const ordered_json& j, const char* key, const std::string& where) {
    const auto& v = require(j, key, where);
    if (!v.is_number())
        throw ValidationError(where + ": key '" + key + "' must be a number");
    return v.get<double>();
}

} // namespace

Instance parse_instance_text(const std::string& text, const std::string& origin) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    const std::string where = origin;

    const auto version = require(j, "format_version", where);
    if (!version.is_number_integer() || version.get<int>() != kInstanceFormatVersion)
        throw ValidationError(where + ": unsupported format_version " + version.dump() +
                              " (expected " + std::to_string(kInstanceFormatVersion) + ")");

    Instance inst;
    inst.horizon = require_number(j, "horizon", where);
    inst.separation_gap = require_number(j, "separation_gap", where);
    inst.cluster_cap = require_number(j, "cluster_cap", where);

    const auto& plan = require(j, "plan", where);
    inst.plan.cycle_enforced = require(plan, "cycle_enforced", where + ".plan").get<bool>();
    inst.plan.num_connections =
        static_cast<int>(require_number(plan, "num_connections", where + ".plan"));
    const auto& stages = require(plan, "stages", where + ".plan");
    if (!stages.is_array() || stages.empty())
        throw ValidationError(where + ".plan: 'stages' must be a non-empty array");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string stag = where + ".plan.stages[" + std::to_string(i) + "]";
        const auto& sj = stages[i];
        StageDefinition s;
        s.id = static_cast<int>(require_number(sj, "id", stag));
        const auto& conns = require(sj, "connections", stag);
        if (!conns.is_array())
            throw ValidationError(stag + ": 'connections' must be an array");
        for (const auto& c : conns) s.connections.push_back(c.get<int>());
        std::sort(s.connections.begin(), s.connections.end());
        s.connections.erase(std::unique(s.connections.begin(), s.connections.end()),
                            s.connections.end());
        s.min_green = require_number(sj, "min_green", stag);
        s.max_green = require_number(sj, "max_green", stag);
        s.intergreen = require_number(sj, "intergreen", stag);
        inst.plan.stages.push_back(std::move(s));
    }

    const auto& ctrl = require(j, "controller", where);
    const int stage_id = static_cast<int>(require_number(ctrl, "current_stage", where + ".controller"));
    inst.controller.current_stage = inst.plan.position_of(stage_id);
    inst.controller.current_connection =
        static_cast<int>(require_number(ctrl, "current_connection", where + ".controller"));
    inst.controller.stage_start = require_number(ctrl, "stage_start", where + ".controller");
    inst.controller.elapsed = require_number(ctrl, "elapsed", where + ".controller");
    const auto& queues = require(ctrl, "queues", where + ".controller");
    if (!queues.is_array())
        throw ValidationError(where + ".controller: 'queues' must be an array");
    for (const auto& q : queues) inst.controller.queues.push_back(q.get<int>());

    const auto& vehicles = require(j, "vehicles", where);
    if (!vehicles.is_array())
        throw ValidationError(where + ": 'vehicles' must be an array");
    std::vector<Detection> detections;
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
        const std::string vtag = where + ".vehicles[" + std::to_string(i) + "]";
        const auto& vj = vehicles[i];
        Detection d;
        d.connection = static_cast<int>(require_number(vj, "connection", vtag));
        d.arr = require_number(vj, "arr", vtag);
        d.dep = require_number(vj, "dep", vtag);
        d.weight = vj.contains("weight") ? vj["weight"].get<double>() : 1.0;
        d.queued = vj.contains("queued") && vj["queued"].get<bool>();
        detections.push_back(d);
    }
    inst.sequences = build_clusters(std::move(detections), inst.plan.num_connections,
                                    inst.separation_gap, inst.cluster_cap);
    inst.validate();
    return inst;
}

Instance parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

std::string write_instance_text(const Instance& inst) {
    ordered_json j;
    j["format_version"] = kInstanceFormatVersion;
    j["horizon"] = inst.horizon;
    j["separation_gap"] = inst.separation_gap;
    j["cluster_cap"] = inst.cluster_cap;

    ordered_json plan;
    plan["cycle_enforced"] = inst.plan.cycle_enforced;
    plan["num_connections"] = inst.plan.num_connections;
    plan["stages"] = ordered_json::array();
    for (const auto& s : inst.plan.stages) {
        ordered_json sj;
        sj["id"] = s.id;
        sj["connections"] = s.connections;
        sj["min_green"] = s.min_green;
        sj["max_green"] = s.max_green;
        sj["intergreen"] = s.intergreen;
        plan["stages"].push_back(std::move(sj));
    }
    j["plan"] = std::move(plan);

    ordered_json ctrl;
    ctrl["current_stage"] = inst.plan.stage(inst.controller.current_stage).id;
    ctrl["current_connection"] = inst.controller.current_connection;
    ctrl["stage_start"] = inst.controller.stage_start;
    ctrl["elapsed"] = inst.controller.elapsed;
    ctrl["queues"] = inst.controller.queues;
    j["controller"] = std::move(ctrl);

    j["vehicles"] = ordered_json::array();
    for (const auto& seq : inst.sequences) {
        for (const auto& c : seq.clusters) {
            for (const auto& v : c.vehicles) {
                ordered_json vj;
                vj["connection"] = v.connection;
                vj["arr"] = v.arr;
                vj["dep"] = v.dep;
                vj["weight"] = v.weight;
                vj["queued"] = v.queued;
                j["vehicles"].push_back(std::move(vj));
            }
        }
    }
    return j.dump(2) + "\n";
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write instance file: " + path);
    out << write_instance_text(inst);
}

} // namespace lanesched
