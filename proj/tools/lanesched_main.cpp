// lanesched: lane-based intersection scheduling engine.
// Subcommands: solve, oracle, gen, bench, sim.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lanesched/bench.hpp"
#include "lanesched/instance_io.hpp"
#include "lanesched/oracle.hpp"
#include "lanesched/search.hpp"
#include "lanesched/sim.hpp"

namespace {

using lanesched::CheckSet;
using lanesched::HeuristicKind;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

HeuristicKind parse_heuristic(const std::string& name) {
    if (name == "pdwspt") return HeuristicKind::pdwspt;
    if (name == "eris") return HeuristicKind::eris;
    if (name == "none") return HeuristicKind::none;
    throw CLI::ValidationError("--heuristic", "expected pdwspt|eris|none");
}

CheckSet parse_checks(const std::string& name) {
    if (name == "all") return CheckSet::all();
    if (name == "dominance") return CheckSet::dominance_only();
    if (name == "minmax") return CheckSet{false, true, false};
    if (name == "dominance-minmax") return CheckSet::dominance_minmax();
    if (name == "none") return CheckSet::none();
    throw CLI::ValidationError("--checks", "expected all|dominance|minmax|dominance-minmax|none");
}

ordered_json schedule_json(const lanesched::Schedule& s) {
    ordered_json j;
    j["total_delay"] = s.total_delay;
    j["entries"] = ordered_json::array();
    for (const auto& e : s.entries) {
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
    j["vehicle_delays"] = s.vehicle_delays;
    return j;
}

ordered_json stats_json(const lanesched::SearchStats& st) {
    ordered_json j;
    j["expansions"] = st.expansions;
    j["generated"] = st.generated;
    j["pruned_dominance"] = st.pruned_dominance;
    j["pruned_equivalence"] = st.pruned_equivalence;
    j["pruned_minmax"] = st.pruned_minmax;
    j["wall_time_s"] = st.wall_time_s;
    j["optimal"] = st.optimal;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw lanesched::ValidationError("cannot write output file: " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lane-based intersection scheduling engine"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "compute a signal timing plan for an instance");
    std::string solve_instance, solve_out, solve_heuristic = "pdwspt", solve_checks = "all";
    double solve_limit_ms = 0.0, solve_h_sat = 2.0;
    std::uint64_t solve_max_exp = 0;
    bool solve_no_cycle = false, solve_strict_dom = false;
    solve_cmd->add_option("instance", solve_instance, "instance file")->required();
    solve_cmd->add_option("--heuristic", solve_heuristic, "pdwspt|eris|none");
    solve_cmd->add_option("--checks", solve_checks, "all|dominance|minmax|dominance-minmax|none");
    solve_cmd->add_option("--time-limit-ms", solve_limit_ms, "wall-clock budget (0 = unlimited)");
    solve_cmd->add_option("--max-expansions", solve_max_exp, "deterministic budget (0 = unlimited)");
    solve_cmd->add_option("--h-sat", solve_h_sat, "saturation headway seconds");
    solve_cmd->add_flag("--no-cycle", solve_no_cycle, "lift the cycle constraints");
    solve_cmd->add_flag("--strict-dominance", solve_strict_dom,
                        "dominance also requires componentwise queue counts");
    solve_cmd->add_option("--out", solve_out, "output path ('-' = stdout)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum for a small instance");
    std::string oracle_instance, oracle_out;
    std::uint64_t oracle_max_states = 2000000;
    bool oracle_no_cycle = false;
    oracle_cmd->add_option("instance", oracle_instance, "instance file")->required();
    oracle_cmd->add_option("--max-states", oracle_max_states, "enumeration cap");
    oracle_cmd->add_flag("--no-cycle", oracle_no_cycle, "lift the cycle constraints");
    oracle_cmd->add_option("--out", oracle_out,
                           "output path (default: <instance>.oracle.json)");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a deterministic instance suite");
    std::string gen_dir = "suite";
    int gen_count = 200, gen_conn_min = 3, gen_conn_max = 6, gen_veh_min = 4, gen_veh_max = 20;
    std::uint64_t gen_seed = 1;
    bool gen_paper_scale = false, gen_oracle_suite = false, gen_no_cycle = false;
    gen_cmd->add_option("--out", gen_dir, "output directory");
    gen_cmd->add_option("--count", gen_count, "number of instances");
    gen_cmd->add_option("--conn-min", gen_conn_min, "");
    gen_cmd->add_option("--conn-max", gen_conn_max, "");
    gen_cmd->add_option("--veh-min", gen_veh_min, "");
    gen_cmd->add_option("--veh-max", gen_veh_max, "");
    gen_cmd->add_option("--seed", gen_seed, "");
    gen_cmd->add_flag("--paper-scale", gen_paper_scale,
                      "1200 instances, 3-6 connections, 4-46 vehicles");
    gen_cmd->add_flag("--oracle-suite", gen_oracle_suite,
                      "small instances sized for the exhaustive oracle");
    gen_cmd->add_flag("--no-cycle", gen_no_cycle, "generate with cycle_enforced=false");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "timing ablation over a suite");
    std::string bench_suite_dir, bench_out, bench_format = "table";
    double bench_limit_ms = 5000.0;
    int bench_reps = 3;
    bool bench_no_cycle = false;
    std::vector<std::string> bench_configs;
    bench_cmd->add_option("--suite", bench_suite_dir, "directory of instance files")->required();
    bench_cmd->add_option("--time-limit-ms", bench_limit_ms, "per-solve budget");
    bench_cmd->add_option("--reps", bench_reps, "timing repetitions per instance");
    bench_cmd->add_flag("--no-cycle", bench_no_cycle, "lift the cycle constraints (ablation)");
    bench_cmd->add_option("--format", bench_format, "csv|table");
    bench_cmd->add_option("--out", bench_out, "output path ('-' = stdout)");
    bench_cmd->add_option("--config", bench_configs,
                          "configuration name(s); default: the full ladder");

    // sim
    auto* sim_cmd = app.add_subcommand("sim", "closed-loop rolling-horizon simulation");
    std::string sim_scenario, sim_out;
    std::vector<std::uint64_t> sim_seeds;
    sim_cmd->add_option("scenario", sim_scenario, "scenario file")->required();
    sim_cmd->add_option("--seed", sim_seeds, "override scenario seeds");
    sim_cmd->add_option("--out", sim_out, "metrics CSV path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_cmd) {
            lanesched::Instance inst = lanesched::parse_instance(solve_instance);
            lanesched::SearchConfig cfg;
            cfg.heuristic = parse_heuristic(solve_heuristic);
            cfg.checks = parse_checks(solve_checks);
            cfg.time_limit_ms = solve_limit_ms;
            cfg.max_expansions = solve_max_exp;
            cfg.h_sat = solve_h_sat;
            cfg.strict_dominance = solve_strict_dom;
            if (solve_no_cycle) cfg.cycle_enforced = false;
            const auto res = lanesched::solve(inst, cfg);
            ordered_json j;
            j["schedule"] = schedule_json(res.schedule);
            j["stats"] = stats_json(res.stats);
            write_text(solve_out.empty() ? "-" : solve_out, j.dump(2) + "\n");
        } else if (*oracle_cmd) {
            lanesched::Instance inst = lanesched::parse_instance(oracle_instance);
            lanesched::SearchConfig cfg;
            if (oracle_no_cycle) cfg.cycle_enforced = false;
            const auto res = lanesched::brute_force_optimal(inst, oracle_max_states, cfg);
            ordered_json j;
            j["optimal_delay"] = res.optimal_delay;
            j["explored"] = res.explored;
            j["optimal_sequence"] = ordered_json::array();
            for (const auto& s : res.optimal_sequence)
                j["optimal_sequence"].push_back({{"connection", s[0]},
                                                 {"first_vehicle", s[1]},
                                                 {"vehicle_count", s[2]}});
            write_text(oracle_out.empty() ? oracle_instance + ".oracle.json" : oracle_out,
                       j.dump(2) + "\n");
        } else if (*gen_cmd) {
            lanesched::SuiteParams p = lanesched::SuiteParams::desk();
            if (gen_paper_scale) p = lanesched::SuiteParams::paper_scale();
            if (gen_oracle_suite) p = lanesched::SuiteParams::oracle_suite();
            if (!gen_paper_scale && !gen_oracle_suite) {
                p.count = gen_count;
                p.conn_min = gen_conn_min;
                p.conn_max = gen_conn_max;
                p.veh_min = gen_veh_min;
                p.veh_max = gen_veh_max;
            }
            p.seed = gen_seed;
            p.cycle_enforced = !gen_no_cycle;
            std::filesystem::create_directories(gen_dir);
            const auto suite = lanesched::generate_suite(p);
            for (std::size_t i = 0; i < suite.size(); ++i) {
                std::ostringstream name;
                name << gen_dir << "/instance_" << std::setfill('0') << std::setw(4) << i
                     << ".json";
                lanesched::write_instance(suite[i], name.str());
            }
            std::cout << "wrote " << suite.size() << " instances to " << gen_dir << "\n";
        } else if (*bench_cmd) {
            std::vector<lanesched::Instance> suite;
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(bench_suite_dir))
                if (entry.path().extension() == ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) suite.push_back(lanesched::parse_instance(f.string()));
            if (suite.empty())
                throw lanesched::ValidationError("no instance files in " + bench_suite_dir);

            auto configs = lanesched::default_bench_configs();
            if (!bench_configs.empty()) {
                std::vector<lanesched::BenchConfigSpec> chosen;
                for (const auto& want : bench_configs) {
                    const auto it =
                        std::find_if(configs.begin(), configs.end(),
                                     [&](const auto& c) { return c.name == want; });
                    if (it == configs.end())
                        throw lanesched::ValidationError("unknown bench config '" + want + "'");
                    chosen.push_back(*it);
                }
                configs = std::move(chosen);
            }
            lanesched::BenchOptions opts;
            opts.time_limit_ms = bench_limit_ms;
            opts.repetitions = bench_reps;
            if (bench_no_cycle) opts.cycle_enforced = false;
            const auto report = lanesched::run_benchmark(suite, configs, opts);
            const auto fmt = bench_format == "csv" ? lanesched::ReportFormat::csv
                                                   : lanesched::ReportFormat::table;
            write_text(bench_out.empty() ? "-" : bench_out, lanesched::emit_report(report, fmt));
        } else if (*sim_cmd) {
            lanesched::NetworkModel net = lanesched::load_scenario(sim_scenario);
            if (!sim_seeds.empty()) net.seeds = sim_seeds;
            const auto runs = lanesched::run_scenario_all_seeds(net);
            write_text(sim_out.empty() ? "-" : sim_out, lanesched::metrics_csv(runs));
        }
    } catch (const lanesched::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const lanesched::OracleLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
