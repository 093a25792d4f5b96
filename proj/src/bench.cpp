#include "lanesched/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace lanesched {

SuiteParams SuiteParams::desk() { return SuiteParams{}; }

SuiteParams SuiteParams::paper_scale() {
    SuiteParams p;
    p.count = 1200;
    p.veh_max = 46;
    p.arr_span = 40.0;
    return p;
}

SuiteParams SuiteParams::oracle_suite() {
    SuiteParams p;
    p.count = 200;
    p.conn_min = 2;
    p.conn_max = 4;
    p.veh_min = 4;
    p.veh_max = 8;
    p.arr_span = 14.0;
    p.dur_lo = 2.0;
    p.dur_hi = 3.5;
    // Wide enough that no stage segment can overrun it.
    p.max_green_lo = 120.0;
    p.max_green_hi = 150.0;
    return p;
}

Instance random_instance(const SuiteParams& p, std::uint64_t index) {
    std::seed_seq seedseq{p.seed, index, std::uint64_t{0x6c616e65}};
    std::mt19937_64 rng(seedseq);
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto uniform_int = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    Instance inst;
    const int m_count = uniform_int(p.conn_min, p.conn_max);
    // Between 2 stages and one per connection; each connection in exactly one.
    const int stage_count = uniform_int(std::min(2, m_count), m_count);

    std::vector<int> conns(static_cast<std::size_t>(m_count));
    for (int m = 0; m < m_count; ++m) conns[static_cast<std::size_t>(m)] = m;
    std::shuffle(conns.begin(), conns.end(), rng);

    inst.plan.num_connections = m_count;
    inst.plan.cycle_enforced = p.cycle_enforced;
    inst.plan.stages.resize(static_cast<std::size_t>(stage_count));
    for (int s = 0; s < stage_count; ++s) {
        auto& st = inst.plan.stages[static_cast<std::size_t>(s)];
        st.id = s;
        st.min_green = uniform(p.min_green_lo, p.min_green_hi);
        st.max_green = uniform(p.max_green_lo, p.max_green_hi);
        st.intergreen = uniform(p.intergreen_lo, p.intergreen_hi);
    }
    for (int m = 0; m < m_count; ++m)
        inst.plan.stages[static_cast<std::size_t>(m % stage_count)].connections.push_back(
            conns[static_cast<std::size_t>(m)]);
    for (auto& st : inst.plan.stages)
        std::sort(st.connections.begin(), st.connections.end());

    const int vehicles = uniform_int(p.veh_min, p.veh_max);
    std::vector<Detection> detections;
    detections.reserve(static_cast<std::size_t>(vehicles));
    for (int i = 0; i < vehicles; ++i) {
        Detection d;
        d.connection = uniform_int(0, m_count - 1);
        d.arr = uniform(0.0, p.arr_span);
        d.dep = d.arr + uniform(p.dur_lo, p.dur_hi);
        detections.push_back(d);
    }

    inst.horizon = p.arr_span + 60.0;
    inst.separation_gap = 1.0;
    inst.cluster_cap = 10.0;
    inst.sequences = build_clusters(std::move(detections), m_count, inst.separation_gap,
                                    inst.cluster_cap);
    inst.controller.current_stage = 0;
    inst.controller.current_connection = inst.plan.stages.front().connections.front();
    inst.controller.stage_start = 0.0;
    inst.controller.elapsed = 0.0;
    inst.controller.queues.assign(static_cast<std::size_t>(m_count), 0);
    inst.validate();
    return inst;
}

std::vector<Instance> generate_suite(const SuiteParams& p) {
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(p.count));
    for (int i = 0; i < p.count; ++i)
        out.push_back(random_instance(p, static_cast<std::uint64_t>(i)));
    return out;
}

std::vector<BenchConfigSpec> default_bench_configs() {
    return {
        {"PDWSPT+D,M", HeuristicKind::pdwspt, CheckSet::dominance_minmax()},
        {"ERIS+D,M", HeuristicKind::eris, CheckSet::dominance_minmax()},
        {"PDWSPT+D", HeuristicKind::pdwspt, CheckSet::dominance_only()},
        {"ERIS+D", HeuristicKind::eris, CheckSet::dominance_only()},
        {"PDWSPT", HeuristicKind::pdwspt, CheckSet::none()},
        {"ERIS", HeuristicKind::eris, CheckSet::none()},
        {"Dijkstra+D,M", HeuristicKind::none, CheckSet::dominance_minmax()},
        {"Dijkstra", HeuristicKind::none, CheckSet::none()},
    };
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double rank = (p / 100.0) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = static_cast<std::size_t>(std::ceil(rank));
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + (values[hi] - values[lo]) * frac;
}

namespace {

double round_to(double v, double unit) { return std::round(v / unit) * unit; }

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

BenchmarkReport run_benchmark(const std::vector<Instance>& suite,
                              const std::vector<BenchConfigSpec>& configs,
                              const BenchOptions& opts) {
    BenchmarkReport report;
    {
        int conn_lo = 0, conn_hi = 0;
        std::size_t veh_lo = 0, veh_hi = 0;
        for (std::size_t i = 0; i < suite.size(); ++i) {
            const int m = suite[i].num_connections();
            const std::size_t v = suite[i].total_vehicles();
            if (i == 0) {
                conn_lo = conn_hi = m;
                veh_lo = veh_hi = v;
            } else {
                conn_lo = std::min(conn_lo, m);
                conn_hi = std::max(conn_hi, m);
                veh_lo = std::min(veh_lo, v);
                veh_hi = std::max(veh_hi, v);
            }
        }
        std::ostringstream d;
        d << suite.size() << " instances, " << conn_lo << "-" << conn_hi << " connections, "
          << veh_lo << "-" << veh_hi << " vehicles";
        report.suite = d.str();
    }

    for (const auto& spec : configs) {
        SearchConfig cfg;
        cfg.heuristic = spec.heuristic;
        cfg.checks = spec.checks;
        cfg.cycle_enforced = opts.cycle_enforced;
        cfg.time_limit_ms = opts.time_limit_ms;
        cfg.h_sat = opts.h_sat;

        std::vector<double> times_ms, expansions;
        std::uint64_t failures = 0;
        for (const auto& inst : suite) {
            try {
                std::vector<double> reps;
                std::uint64_t exp = 0;
                for (int r = 0; r < std::max(opts.repetitions, 1); ++r) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const SolveResult res = a_star(inst, cfg);
                    const auto t1 = std::chrono::steady_clock::now();
                    reps.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                    exp = res.stats.expansions;
                }
                times_ms.push_back(percentile(reps, 50.0));
                expansions.push_back(static_cast<double>(exp));
            } catch (const std::exception&) {
                ++failures;
            }
        }

        BenchRow row;
        row.config = spec.name;
        row.instances = suite.size();
        row.failures = failures;
        row.rt_mean = round_to(mean(times_ms), 1e-3);
        row.rt_p25 = round_to(percentile(times_ms, 25.0), 1e-3);
        row.rt_p50 = round_to(percentile(times_ms, 50.0), 1e-3);
        row.rt_p75 = round_to(percentile(times_ms, 75.0), 1e-3);
        row.rt_p95 = round_to(percentile(times_ms, 95.0), 1e-3);
        row.ex_mean = round_to(mean(expansions), 1e-1);
        row.ex_p25 = round_to(percentile(expansions, 25.0), 1e-1);
        row.ex_p50 = round_to(percentile(expansions, 50.0), 1e-1);
        row.ex_p75 = round_to(percentile(expansions, 75.0), 1e-1);
        row.ex_p95 = round_to(percentile(expansions, 95.0), 1e-1);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string format_num(double v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::string emit_report(const BenchmarkReport& report, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "# suite: " << report.suite << "\n";
        out << "config,instances,failures,rt_mean_ms,rt_p25_ms,rt_p50_ms,rt_p75_ms,rt_p95_ms,"
               "ex_mean,ex_p25,ex_p50,ex_p75,ex_p95\n";
        for (const auto& r : report.rows) {
            out << csv_field(r.config) << ',' << r.instances << ',' << r.failures << ','
                << format_num(r.rt_mean, 3) << ',' << format_num(r.rt_p25, 3) << ','
                << format_num(r.rt_p50, 3) << ',' << format_num(r.rt_p75, 3) << ','
                << format_num(r.rt_p95, 3) << ',' << format_num(r.ex_mean, 1) << ','
                << format_num(r.ex_p25, 1) << ',' << format_num(r.ex_p50, 1) << ','
                << format_num(r.ex_p75, 1) << ',' << format_num(r.ex_p95, 1) << "\n";
        }
        return out.str();
    }

    // Table layout mirrors the benchmark's two column groups.
    out << "suite: " << report.suite << "\n\n";
    out << std::left << std::setw(14) << "" << "| " << std::setw(44) << "Run-Time (ms)" << "| "
        << "Number of Expansions\n";
    out << std::left << std::setw(14) << "config" << "| ";
    for (const char* c : {"Mean", "25%", "50%", "75%", "95%"}) out << std::setw(9) << c;
    out << "| ";
    for (const char* c : {"Mean", "25%", "50%", "75%", "95%"}) out << std::setw(11) << c;
    out << "\n" << std::string(14 + 2 + 45 + 2 + 55, '-') << "\n";
    for (const auto& r : report.rows) {
        out << std::left << std::setw(14) << r.config << "| ";
        for (double v : {r.rt_mean, r.rt_p25, r.rt_p50, r.rt_p75, r.rt_p95})
            out << std::setw(9) << format_num(v, 1);
        out << "| ";
        for (double v : {r.ex_mean, r.ex_p25, r.ex_p50, r.ex_p75, r.ex_p95})
            out << std::setw(11) << format_num(v, 0);
        out << "\n";
    }
    return out.str();
}

BenchmarkReport parse_report_csv(const std::string& text) {
    BenchmarkReport report;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# suite: ", 0) == 0) {
            report.suite = line.substr(9);
            continue;
        }
        if (!header_seen) { // column header
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 13)
            throw ValidationError("benchmark csv: expected 13 fields, got " +
                                  std::to_string(fields.size()));
        BenchRow r;
        r.config = fields[0];
        r.instances = std::stoull(fields[1]);
        r.failures = std::stoull(fields[2]);
        r.rt_mean = std::stod(fields[3]);
        r.rt_p25 = std::stod(fields[4]);
        r.rt_p50 = std::stod(fields[5]);
        r.rt_p75 = std::stod(fields[6]);
        r.rt_p95 = std::stod(fields[7]);
        r.ex_mean = std::stod(fields[8]);
        r.ex_p25 = std::stod(fields[9]);
        r.ex_p50 = std::stod(fields[10]);
        r.ex_p75 = std::stod(fields[11]);
        r.ex_p95 = std::stod(fields[12]);
        report.rows.push_back(std::move(r));
    }
    return report;
}

} // namespace lanesched
