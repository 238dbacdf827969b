#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "submeta/bruteforce/checks.hpp"
#include "submeta/bruteforce/fixtures.hpp"
#include "submeta/core/instance.hpp"
#include "submeta/errors.hpp"
#include "submeta/harness/experiment.hpp"
#include "submeta/ic/graph.hpp"
#include "submeta/verify/ratios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw submeta::IoError("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_experiment_command(const std::string& config_path, const std::string& output_path,
                           const std::string& plot_path, bool json) {
    auto config = submeta::harness::ExperimentConfig::from_json(read_file(config_path));
    auto table = submeta::harness::run_experiment(config);
    if (!output_path.empty()) submeta::harness::emit_csv(table, output_path);
    if (!plot_path.empty()) submeta::harness::emit_plot_data(table, config, plot_path);
    if (json) {
        std::cout << table.to_json() << "\n";
    } else {
        std::cout << "cells: " << config.cells().size() << "  rows: " << table.rows.size() << "\n";
        for (auto [l, k] : config.cells()) {
            for (auto algorithm : config.algorithms) {
                auto name = submeta::harness::algorithm_to_string(algorithm);
                auto agg = table.aggregate(name, l, k);
                std::cout << "  l=" << l << " k=" << k << " " << name << ": mean=" << agg.mean
                          << " stderr=" << agg.stderr_ << "\n";
            }
        }
        if (!output_path.empty()) std::cout << "wrote " << output_path << "\n";
    }
    return kExitOk;
}

int verify_ratios_command(const std::string& regime_name, long count, std::uint64_t seed,
                          bool json) {
    auto regime = submeta::regime_from_string(regime_name);
    auto report = submeta::verify_ratios(regime, count, seed);
    if (json)
        std::cout << report.to_json() << "\n";
    else
        std::cout << report.summary() << "\n";
    return report.violations == 0 ? kExitOk : kExitVerificationFailed;
}

int check_submodularity_command(const std::string& instance_path, bool remark2, int task_index,
                                bool json) {
    submeta::TaskPtr task;
    submeta::Prior prior = submeta::Prior::explicit_prior({{submeta::Realization{{0}, 0}, 1.0}});
    if (remark2) {
        auto [tasks, base_prior] = submeta::remark2_instance();
        // The training-stage objective: task uncertainty folded into the
        // realization.
        auto [pooled, pooled_prior] = submeta::pooled_objective(tasks, base_prior);
        task = pooled;
        prior = pooled_prior;
    } else {
        auto instance = submeta::load_instance_file(instance_path);
        if (task_index < 0) {
            auto [pooled, pooled_prior] = submeta::pooled_objective(instance.tasks, instance.prior);
            task = pooled;
            prior = pooled_prior;
        } else {
            if (task_index >= static_cast<int>(instance.tasks.size()))
                throw submeta::ConfigError("task index out of range");
            task = instance.tasks[static_cast<std::size_t>(task_index)];
            prior = instance.prior;
        }
    }

    auto submodular = submeta::check_adaptive_submodularity(*task, prior);
    auto monotone = submeta::check_adaptive_monotonicity(*task, prior);
    if (json) {
        nlohmann::json doc;
        doc["adaptive_submodular"] = nlohmann::json::parse(submodular.to_json());
        doc["adaptive_monotone"] = nlohmann::json::parse(monotone.to_json());
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << "adaptive submodular: " << (submodular.holds ? "yes" : "no") << " ("
                  << submodular.violations.size() << " violations)\n";
        for (const auto& v : submodular.violations)
            std::cout << "  item " << v.item << ": delta(psi)=" << v.delta_psi
                      << " < delta(psi')=" << v.delta_psi_prime << "\n";
        std::cout << "adaptive monotone: " << (monotone.holds ? "yes" : "no") << " ("
                  << monotone.violations.size() << " violations)\n";
    }
    return kExitOk;
}

int gen_graph_command(const std::string& kind, int nodes, int edges, std::uint64_t seed,
                      const std::string& output) {
    if (kind != "random") throw submeta::ConfigError("unknown graph kind: " + kind);
    auto graph = submeta::ic::random_graph(nodes, edges, seed);
    submeta::ic::write_edge_list(graph, output);
    std::cout << "wrote " << output << " (" << graph.node_count << " nodes, " << graph.edge_count()
              << " edges)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase adaptive submodular selection: experiments, bound verification, "
                 "and property checks"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable JSON on stdout");

    auto* run = app.add_subcommand("run-experiment", "run a sweep from a JSON config");
    std::string config_path, output_path, plot_path;
    run->add_option("--config", config_path, "experiment config JSON")->required();
    run->add_option("--output", output_path, "CSV output path");
    run->add_option("--plot-data", plot_path, "per-panel series JSON output path");

    auto* verify = app.add_subcommand("verify-ratios", "check approximation bounds against the "
                                                       "brute-force optimum on random instances");
    std::string regime = "monotone";
    long count = 50;
    std::uint64_t seed = 0;
    verify->add_option("--regime", regime, "monotone | nonmonotone | kl1 | l1");
    verify->add_option("--count", count, "number of random instances");
    verify->add_option("--seed", seed, "master seed");

    auto* check = app.add_subcommand("check-submodularity",
                                     "exhaustive adaptive submodularity / monotonicity check");
    std::string instance_path;
    bool remark2 = false;
    int task_index = -1;
    check->add_option("--instance", instance_path, "toy instance JSON");
    check->add_flag("--remark2", remark2, "use the built-in two-item counterexample");
    check->add_option("--task", task_index,
                      "check a single task instead of the pooled training objective");

    auto* gen = app.add_subcommand("gen-graph", "write a synthetic edge list");
    std::string kind = "random", graph_out;
    int nodes = 200, edges = 800;
    std::uint64_t graph_seed = 0;
    gen->add_option("--kind", kind, "graph family (random)");
    gen->add_option("--nodes", nodes, "node count");
    gen->add_option("--edges", edges, "edge count");
    gen->add_option("--seed", graph_seed, "seed");
    gen->add_option("--output", graph_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return run_experiment_command(config_path, output_path, plot_path, json);
        if (verify->parsed()) return verify_ratios_command(regime, count, seed, json);
        if (check->parsed()) {
            if (!remark2 && instance_path.empty()) {
                std::cerr << "check-submodularity needs --instance or --remark2\n";
                return kExitUsage;
            }
            return check_submodularity_command(instance_path, remark2, task_index, json);
        }
        if (gen->parsed()) return gen_graph_command(kind, nodes, edges, graph_seed, graph_out);
    } catch (const submeta::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const submeta::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitUsage;
}
