// rsmarket: command-line driver for the two-sided ride-sourcing market
// simulator.
//
//   rsmarket run <scenario> [--out DIR] [--set key=value ...] [--trajectories]
//   rsmarket generate grid|demand|supply ...
//   rsmarket validate <scenario> [--set key=value ...]
//
// RSMARKET_OUT_DIR sets the output directory when neither --out nor
// run.output_dir is given.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rsm/error.hpp"
#include "rsm/output.hpp"
#include "rsm/population.hpp"
#include "rsm/scenario_file.hpp"

namespace {

namespace fs = std::filesystem;
using rsm::config::json;

void report(const rsm::Error& e) {
    if (const auto* v = dynamic_cast<const rsm::ValidationError*>(&e)) {
        std::cerr << "error: " << v->problems().size() << " problem(s)\n";
        for (const auto& p : v->problems()) std::cerr << "  - " << p << '\n';
    } else {
        std::cerr << "error: " << e.what() << '\n';
    }
}

fs::path output_dir(const std::string& flag, const json& resolved) {
    if (!flag.empty()) return flag;
    const auto& configured = resolved.at("run").at("output_dir");
    if (configured.is_string()) return configured.get<std::string>();
    if (const char* env = std::getenv("RSMARKET_OUT_DIR"); env && *env) return env;
    return "rsmarket_out";
}

int cmd_run(const std::string& scenario_path, std::vector<std::string> overrides,
            const std::string& out_flag, bool trajectories) {
    if (trajectories) overrides.push_back("run.trajectories=true");
    auto resolved = rsm::config::load(scenario_path, overrides);
    auto scenario = rsm::config::build(resolved);
    auto out = output_dir(out_flag, resolved);

    auto result = rsm::run_replications(scenario);
    auto files = rsm::output::write_run(out, result);

    auto manifest_path = out / "manifest.json";
    std::ofstream mf(manifest_path);
    if (!mf) throw rsm::Error("cannot write " + manifest_path.string());
    mf << rsm::config::manifest(resolved).dump(2) << '\n';
    files.paths.push_back(manifest_path);

    std::cout << "scenario " << scenario_path << ": " << scenario.travelers.size()
              << " travelers, " << scenario.drivers.size() << " drivers, " << scenario.horizon
              << " days, " << scenario.replications << " replication(s), seed " << scenario.seed
              << "\n\n"
              << rsm::output::stage_report(result) << '\n';
    for (const auto& p : files.paths) std::cout << "wrote " << p.string() << '\n';
    return 0;
}

int cmd_validate(const std::string& scenario_path, const std::vector<std::string>& overrides) {
    auto resolved = rsm::config::load(scenario_path, overrides);
    auto scenario = rsm::config::build(resolved);
    std::cout << "scenario " << scenario_path << " is valid: " << scenario.travelers.size()
              << " travelers, " << scenario.drivers.size() << " drivers, "
              << scenario.graph->nodes().size() << " nodes, horizon " << scenario.horizon
              << " days\n\n"
              << rsm::config::stage_table(scenario.schedule);
    return 0;
}

struct GraphArgs {
    std::string nodes;
    std::string edges;
    double speed = 36.0;
};

void add_graph_options(CLI::App* app, GraphArgs& g) {
    app->add_option("--nodes", g.nodes, "nodes CSV (node_id,x,y)")->required()->check(CLI::ExistingFile);
    app->add_option("--edges", g.edges, "edges CSV (from,to,length_m)")->required()->check(CLI::ExistingFile);
    app->add_option("--speed", g.speed, "network speed [km/h]");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sided ride-sourcing market simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool trajectories = false;
    auto* run = app.add_subcommand("run", "run a scenario and write CSV results");
    run->add_option("scenario", scenario_path, "scenario or manifest JSON")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--set", overrides, "override a config key, e.g. run.seed=7");
    run->add_flag("--trajectories", trajectories, "write per-agent trajectories");

    auto* validate = app.add_subcommand("validate", "validate a scenario and print its stages");
    validate->add_option("scenario", scenario_path, "scenario JSON")->required();
    validate->add_option("--set", overrides, "override a config key");

    auto* generate = app.add_subcommand("generate", "write synthetic network/population files");
    generate->require_subcommand(1);

    int grid_n = 10;
    double spacing = 500.0;
    double speed = 36.0;
    std::string grid_out = ".";
    auto* grid = generate->add_subcommand("grid", "n x n lattice -> nodes.csv, edges.csv");
    grid->add_option("--n", grid_n, "nodes per side")->required();
    grid->add_option("--spacing", spacing, "edge length [m]")->required();
    grid->add_option("--speed", speed, "network speed [km/h] (checked only)");
    grid->add_option("--out", grid_out, "output directory");

    GraphArgs demand_graph;
    rsm::DemandParams demand_params;
    std::uint64_t seed = 42;
    std::string demand_out = "travelers.csv";
    auto* demand = generate->add_subcommand("demand", "random travelers -> travelers CSV");
    add_graph_options(demand, demand_graph);
    demand->add_option("--count", demand_params.n, "number of travelers")->required();
    demand->add_option("--day-length", demand_params.day_length_s, "day length [s]");
    demand->add_option("--pt-factor", demand_params.pt_factor, "PT in-vehicle time multiplier");
    demand->add_option("--pt-overhead", demand_params.pt_overhead_s, "PT fixed overhead [s]");
    demand->add_option("--min-distance", demand_params.min_trip_distance_m, "minimum trip length [m]");
    demand->add_option("--seed", seed, "random seed");
    demand->add_option("--out", demand_out, "output file");

    GraphArgs supply_graph;
    rsm::SupplyParams supply_params;
    std::string supply_out = "drivers.csv";
    auto* supply = generate->add_subcommand("supply", "random driver start nodes -> drivers CSV");
    add_graph_options(supply, supply_graph);
    supply->add_option("--count", supply_params.n, "number of drivers")->required();
    supply->add_option("--wage", supply_params.reservation_wage, "reservation wage [EUR/h]");
    supply->add_option("--cost", supply_params.operating_cost_km, "operating cost [EUR/km]");
    supply->add_option("--seed", seed, "random seed");
    supply->add_option("--out", supply_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(scenario_path, overrides, out_dir, trajectories);
        if (*validate) return cmd_validate(scenario_path, overrides);
        if (*grid) {
            auto g = rsm::make_grid(grid_n, spacing, speed);
            fs::create_directories(grid_out);
            rsm::save_graph(g, fs::path(grid_out) / "nodes.csv", fs::path(grid_out) / "edges.csv");
            std::cout << "wrote " << g.nodes().size() << " nodes and " << g.edges().size()
                      << " edges to " << grid_out << '\n';
            return 0;
        }
        if (*demand) {
            auto g = rsm::load_graph(demand_graph.nodes, demand_graph.edges, demand_graph.speed);
            auto travelers = rsm::generate_demand(g, demand_params, {}, seed);
            rsm::save_travelers(travelers, demand_out);
            std::cout << "wrote " << travelers.size() << " travelers to " << demand_out << '\n';
            return 0;
        }
        if (*supply) {
            auto g = rsm::load_graph(supply_graph.nodes, supply_graph.edges, supply_graph.speed);
            auto drivers = rsm::generate_supply(g, supply_params, {}, seed);
            rsm::save_drivers(drivers, supply_out);
            std::cout << "wrote " << drivers.size() << " drivers to " << supply_out << '\n';
            return 0;
        }
    } catch (const rsm::Error& e) {
        report(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
