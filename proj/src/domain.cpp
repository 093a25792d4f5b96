#include "lanesched/domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lanesched {

double Cluster::total_weight() const {
    double w = 0.0;
    for (const auto& v : vehicles) w += v.weight;
    return w;
}

std::size_t ConnectionSequence::total_vehicles() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.vehicles.size();
    return n;
}

std::vector<Vehicle> ConnectionSequence::flatten() const {
    std::vector<Vehicle> out;
    out.reserve(total_vehicles());
    for (const auto& c : clusters)
        out.insert(out.end(), c.vehicles.begin(), c.vehicles.end());
    return out;
}

bool StageDefinition::serves(int connection) const {
    return std::find(connections.begin(), connections.end(), connection) != connections.end();
}

std::size_t CyclePlan::position_of(int stage_id) const {
    for (std::size_t i = 0; i < stages.size(); ++i)
        if (stages[i].id == stage_id) return i;
    throw ValidationError("no stage with id " + std::to_string(stage_id));
}

std::size_t Instance::total_vehicles() const {
    std::size_t n = 0;
    for (const auto& s : sequences) n += s.total_vehicles();
    return n;
}

std::vector<ConnectionSequence> build_clusters(std::vector<Detection> detections,
                                               int num_connections,
                                               double separation_gap,
                                               double cluster_cap) {
    if (separation_gap <= 0.0) throw ValidationError("separation_gap must be > 0");
    if (cluster_cap <= 0.0) throw ValidationError("cluster_cap must be > 0");
    for (std::size_t i = 0; i < detections.size(); ++i) {
        const auto& d = detections[i];
        std::ostringstream where;
        where << "detection " << i << " (connection " << d.connection
              << ", arr " << d.arr << ", dep " << d.dep << ")";
        if (!(d.dep > d.arr)) throw ValidationError(where.str() + ": dep must be > arr");
        if (d.arr < 0.0) throw ValidationError(where.str() + ": arr must be >= 0");
        if (!(d.weight > 0.0)) throw ValidationError(where.str() + ": weight must be > 0");
        if (d.connection < 0 || d.connection >= num_connections)
            throw ValidationError(where.str() + ": connection out of range");
    }

    std::stable_sort(detections.begin(), detections.end(),
                     [](const Detection& a, const Detection& b) {
                         if (a.connection != b.connection) return a.connection < b.connection;
                         if (a.arr != b.arr) return a.arr < b.arr;
                         if (a.dep != b.dep) return a.dep < b.dep;
                         return a.weight < b.weight;
                     });

    std::vector<ConnectionSequence> out(static_cast<std::size_t>(num_connections));
    for (int m = 0; m < num_connections; ++m) out[static_cast<std::size_t>(m)].connection = m;

    for (const auto& d : detections) {
        Vehicle v{d.connection, d.arr, d.dep, d.queued, d.weight};
        auto& seq = out[static_cast<std::size_t>(d.connection)];
        bool start_new = true;
        if (!seq.clusters.empty()) {
            const Cluster& last = seq.clusters.back();
            const bool close_enough = time_less(v.arr - last.last_arrival(), separation_gap);
            const bool within_cap = !time_greater(v.arr - last.first_arrival(), cluster_cap);
            start_new = !(close_enough && within_cap);
        }
        if (start_new) seq.clusters.push_back(Cluster{d.connection, {}});
        seq.clusters.back().vehicles.push_back(v);
    }
    return out;
}

std::size_t nearest_stage(int connection, std::size_t from, const CyclePlan& plan) {
    const std::size_t k = plan.size();
    for (std::size_t step = 0; step < k; ++step) {
        const std::size_t pos = (from + step) % k;
        if (plan.stage(pos).serves(connection)) return pos;
    }
    throw ValidationError("connection " + std::to_string(connection) + " is served by no stage");
}

double min_switch(std::size_t from, std::size_t to, const CyclePlan& plan, bool strict_traversal) {
    if (from == to) return 0.0;
    const std::size_t k = plan.size();
    double cost = 0.0;
    for (std::size_t pos = from; pos != to; pos = (pos + 1) % k) {
        cost += plan.stage(pos).intergreen;
        if (strict_traversal && pos != from) cost += plan.stage(pos).min_green;
    }
    return cost;
}

double reopen_cost(std::size_t s, const CyclePlan& plan, bool strict_traversal) {
    if (!plan.cycle_enforced || plan.size() == 1)
        return plan.stage(s).intergreen;
    const std::size_t k = plan.size();
    double cost = plan.stage(s).intergreen;
    for (std::size_t pos = plan.next(s); pos != s; pos = (pos + 1) % k) {
        cost += plan.stage(pos).intergreen;
        if (strict_traversal) cost += plan.stage(pos).min_green;
    }
    return cost;
}

std::vector<std::string> validate_plan(const CyclePlan& plan) {
    std::vector<std::string> violations;
    if (plan.stages.empty()) violations.push_back("plan has no stages");
    if (plan.num_connections <= 0) violations.push_back("num_connections must be > 0");

    std::set<int> ids;
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const auto& s = plan.stages[i];
        const std::string tag = "stage " + std::to_string(s.id);
        if (!ids.insert(s.id).second) violations.push_back(tag + ": duplicate stage id");
        if (s.connections.empty()) violations.push_back(tag + ": connection set is empty");
        if (s.min_green < 0.0) violations.push_back(tag + ": min_green must be >= 0");
        if (s.min_green > s.max_green) violations.push_back(tag + ": min_green exceeds max_green");
        if (s.intergreen < 0.0) violations.push_back(tag + ": intergreen must be >= 0");
        for (int m : s.connections)
            if (m < 0 || m >= plan.num_connections)
                violations.push_back(tag + ": connection " + std::to_string(m) + " out of range");
    }

    for (int m = 0; m < plan.num_connections; ++m) {
        bool served = false;
        for (const auto& s : plan.stages)
            if (s.serves(m)) { served = true; break; }
        if (!served)
            violations.push_back("connection " + std::to_string(m) + " appears in no stage");
    }
    return violations;
}

void Instance::validate() const {
    std::vector<std::string> violations = validate_plan(plan);

    if (sequences.size() != static_cast<std::size_t>(plan.num_connections))
        violations.push_back("expected one connection sequence per connection");
    for (const auto& seq : sequences) {
        double prev_arr = -1.0;
        for (const auto& c : seq.clusters) {
            if (c.empty()) {
                violations.push_back("empty cluster on connection " + std::to_string(seq.connection));
                continue;
            }
            for (const auto& v : c.vehicles) {
                std::ostringstream tag;
                tag << "vehicle (connection " << v.connection << ", arr " << v.arr << ")";
                if (v.connection != seq.connection) violations.push_back(tag.str() + ": wrong sequence");
                if (!(v.dep > v.arr)) violations.push_back(tag.str() + ": dep must be > arr");
                if (v.arr < 0.0) violations.push_back(tag.str() + ": arr must be >= 0");
                if (!(v.weight > 0.0)) violations.push_back(tag.str() + ": weight must be > 0");
                if (time_greater(v.arr, horizon)) violations.push_back(tag.str() + ": arr beyond horizon");
                if (v.arr < prev_arr) violations.push_back(tag.str() + ": arrivals not FIFO");
                prev_arr = v.arr;
            }
        }
    }

    if (controller.current_stage >= plan.size())
        violations.push_back("controller current_stage out of range");
    if (controller.elapsed < 0.0) violations.push_back("controller elapsed must be >= 0");
    if (controller.queues.size() != static_cast<std::size_t>(plan.num_connections))
        violations.push_back("controller queues must have one entry per connection");
    for (std::size_t m = 0; m < controller.queues.size(); ++m)
        if (controller.queues[m] < 0)
            violations.push_back("controller queue count for connection " + std::to_string(m) + " is negative");
    if (horizon < 0.0) violations.push_back("horizon must be >= 0");

    if (!violations.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw ValidationError(msg);
    }
}

} // namespace lanesched
