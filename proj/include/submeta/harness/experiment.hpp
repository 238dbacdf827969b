#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "submeta/ic/cascade.hpp"

namespace submeta::harness {

enum class Algorithm { TGP, TRGP, RMG, GT, FULLY_ADAPTIVE, RANDOM, PI_A, PI_B };

Algorithm algorithm_from_string(const std::string& name);
std::string algorithm_to_string(Algorithm algorithm);

/// Sampling budgets of the cascade estimators.
struct EstimatorBudgets {
    int train_draws = 100;     // surrogate pool per training task
    int test_draws = 100;      // per-test-task pool (completions, singletons)
    int adaptive_draws = 64;   // conditioned draws per adaptive round
};

struct GraphSpec {
    std::string path;          // edge-list file; empty when synthetic
    int nodes = 0;             // synthetic random graph
    int edges = 0;
    std::uint64_t seed = 0;

    bool synthetic() const { return path.empty(); }
};

struct ExperimentConfig {
    GraphSpec graph;
    int m_train = 20;
    int m_test = 20;
    std::vector<int> k_values;
    std::vector<int> l_values;    // absolute l values, or
    double l_fraction = -1.0;     // l = round-half-up(fraction * k), clamped to [1, k-1]
    std::vector<Algorithm> algorithms;
    int repetitions = 100;
    std::uint64_t master_seed = 0;
    std::vector<double> edge_prob_choices{0.1, 0.01};
    EstimatorBudgets estimator;
    unsigned threads = 0;         // 0: SUBMETA_THREADS env or hardware

    static ExperimentConfig from_json(const std::string& text);
    void validate() const;

    /// The (l, k) sweep cells, in declaration order.
    std::vector<std::pair<int, int>> cells() const;
};

struct ResultRow {
    std::string algorithm;
    int l = 0;
    int k = 0;
    int repetition = 0;
    double mean_utility = 0.0;
    double stderr_ = 0.0;
    double wall_ms = 0.0;
};

struct ExperimentTable {
    std::vector<ResultRow> rows;

    std::string to_csv() const;
    static ExperimentTable from_csv(const std::string& text);

    /// Deterministic machine-readable form; wall-clock times are excluded
    /// so reruns with one master seed are byte-identical.
    std::string to_json() const;

    /// Mean over repetitions and standard error of that mean for one cell.
    struct Aggregate {
        double mean = 0.0;
        double stderr_ = 0.0;
        int repetitions = 0;
    };
    Aggregate aggregate(const std::string& algorithm, int l, int k) const;
};

/// Samples train/test tasks per repetition from disjoint seed streams,
/// trains every algorithm's initial set, and scores mean test utility by
/// Monte Carlo policy execution (one fresh realization per test task).
/// One row per (algorithm, l, k, repetition).
ExperimentTable run_experiment(const ExperimentConfig& config);

void emit_csv(const ExperimentTable& table, const std::string& path);

/// Figure-style series: per algorithm, x = l for each fixed-k sweep and
/// x = k for fractional-l sweeps, with aggregated means and stderrs.
std::string plot_data_json(const ExperimentTable& table, const ExperimentConfig& config);
void emit_plot_data(const ExperimentTable& table, const ExperimentConfig& config,
                    const std::string& path);

/// l for a cell: the explicit value, or the rounded fraction of k.
int resolve_l(double fraction, int k);

}  // namespace submeta::harness
