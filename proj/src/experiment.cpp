#include "submeta/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "submeta/errors.hpp"
#include "submeta/policies/selection.hpp"
#include "submeta/util/parallel.hpp"

namespace submeta::harness {

namespace {

using ic::DiGraph;
using ic::ICTask;
using ic::ICTaskPtr;
using ic::LiveEdgeDraw;

// Stream tags for seed derivation.
constexpr std::uint64_t kTagTrainTask = 0xA1;
constexpr std::uint64_t kTagTestTask = 0xA2;
constexpr std::uint64_t kTagTrainPool = 0xA3;
constexpr std::uint64_t kTagTestPool = 0xA4;
constexpr std::uint64_t kTagRealization = 0xA5;
constexpr std::uint64_t kTagInit = 0xA6;
constexpr std::uint64_t kTagExec = 0xA7;
constexpr std::uint64_t kTagRandomSel = 0xA8;

/// Fixed live-edge draws with per-node reachability, the common-random-
/// numbers pool behind every non-adaptive estimate for one task.
struct TaskPool {
    std::vector<LiveEdgeDraw> draws;
    std::vector<std::vector<BitSet>> reach;  // [draw][node]
};

TaskPool build_pool(const ICTask& task, int n_draws, Rng& rng) {
    TaskPool pool;
    pool.draws.reserve(static_cast<std::size_t>(n_draws));
    pool.reach.reserve(static_cast<std::size_t>(n_draws));
    for (int d = 0; d < n_draws; ++d) {
        pool.draws.push_back(ic::sample_live(task, rng));
        pool.reach.push_back(ic::reachability_closure(task.graph(), pool.draws.back()));
    }
    return pool;
}

/// Incremental greedy state over one or more task pools: covered sets per
/// (task, draw) plus the pooled marginal of adding a node.
class SurrogateState {
  public:
    SurrogateState(const std::vector<TaskPool>* pools, int node_count) : pools_(pools) {
        covered_.resize(pools->size());
        for (std::size_t t = 0; t < pools->size(); ++t)
            covered_[t].assign((*pools)[t].draws.size(), BitSet(static_cast<std::size_t>(node_count)));
    }

    double marginal(int node) const {
        double total = 0.0;
        long samples = 0;
        for (std::size_t t = 0; t < pools_->size(); ++t) {
            const auto& reach = (*pools_)[t].reach;
            for (std::size_t d = 0; d < reach.size(); ++d) {
                total += static_cast<double>(
                    reach[d][static_cast<std::size_t>(node)].count_andnot(covered_[t][d]));
                ++samples;
            }
        }
        return samples > 0 ? total / static_cast<double>(samples) : 0.0;
    }

    void add(int node) {
        for (std::size_t t = 0; t < pools_->size(); ++t) {
            const auto& reach = (*pools_)[t].reach;
            for (std::size_t d = 0; d < reach.size(); ++d)
                covered_[t][d] |= reach[d][static_cast<std::size_t>(node)];
        }
    }

  private:
    const std::vector<TaskPool>* pools_;
    std::vector<std::vector<BitSet>> covered_;
};

/// Deterministic greedy chain over the pooled surrogate; prefix l is the
/// two-phase greedy initial set, prefix k the greedy-train baseline.
std::vector<ItemId> greedy_chain(const std::vector<TaskPool>& pools, int node_count, int rounds) {
    SurrogateState state(&pools, node_count);
    std::vector<ItemId> chain;
    std::vector<bool> selected(static_cast<std::size_t>(node_count), false);
    for (int round = 0; round < rounds && round < node_count; ++round) {
        int best = -1;
        double best_value = -1.0;
        for (int v = 0; v < node_count; ++v) {
            if (selected[static_cast<std::size_t>(v)]) continue;
            double value = state.marginal(v);
            if (value > best_value) {
                best_value = value;
                best = v;
            }
        }
        selected[static_cast<std::size_t>(best)] = true;
        chain.push_back(best);
        state.add(best);
    }
    return chain;
}

/// Random greedy over E' (dummies are ids >= node_count with marginal 0):
/// each round samples uniformly from the top-u_size candidates.
std::vector<ItemId> random_greedy_init_ic(const std::vector<TaskPool>& pools, int node_count,
                                          int rounds, int u_size, int n_dummies, Rng& rng) {
    SurrogateState state(&pools, node_count);
    std::vector<ItemId> picks;
    std::vector<bool> taken(static_cast<std::size_t>(node_count + n_dummies), false);
    for (int round = 0; round < rounds; ++round) {
        std::vector<ItemId> candidates;
        std::vector<double> marginals;
        for (int v = 0; v < node_count + n_dummies; ++v) {
            if (taken[static_cast<std::size_t>(v)]) continue;
            candidates.push_back(v);
            marginals.push_back(v < node_count ? state.marginal(v) : 0.0);
        }
        auto u = top_items(candidates, marginals, node_count, static_cast<std::size_t>(u_size));
        ItemId pick = u[rng.below(u.size())];
        taken[static_cast<std::size_t>(pick)] = true;
        picks.push_back(pick);
        if (pick < node_count) state.add(pick);
    }
    return picks;
}

/// Non-adaptive greedy completion on one task's own pool (the randomized
/// meta-greedy test phase: no observations consulted).
std::vector<int> nonadaptive_completion(const TaskPool& pool, int node_count,
                                        const std::vector<ItemId>& initial, int k) {
    BitSet covered_template(static_cast<std::size_t>(node_count));
    std::vector<BitSet> covered(pool.draws.size(), covered_template);
    std::vector<int> selection;
    std::vector<bool> taken(static_cast<std::size_t>(node_count), false);
    auto add_node = [&](int v) {
        for (std::size_t d = 0; d < pool.reach.size(); ++d)
            covered[d] |= pool.reach[d][static_cast<std::size_t>(v)];
    };
    int used = 0;
    for (ItemId e : initial) {
        ++used;
        if (e < node_count) {
            taken[static_cast<std::size_t>(e)] = true;
            selection.push_back(e);
            add_node(e);
        }
    }
    for (; used < k; ++used) {
        int best = -1;
        double best_value = -1.0;
        for (int v = 0; v < node_count; ++v) {
            if (taken[static_cast<std::size_t>(v)]) continue;
            double total = 0.0;
            for (std::size_t d = 0; d < pool.reach.size(); ++d)
                total += static_cast<double>(
                    pool.reach[d][static_cast<std::size_t>(v)].count_andnot(covered[d]));
            double value = total / static_cast<double>(pool.reach.size());
            if (value > best_value) {
                best_value = value;
                best = v;
            }
        }
        if (best < 0) break;
        taken[static_cast<std::size_t>(best)] = true;
        selection.push_back(best);
        add_node(best);
    }
    return selection;
}

int best_singleton_ic(const TaskPool& pool, int node_count) {
    int best = 0;
    double best_value = -1.0;
    for (int v = 0; v < node_count; ++v) {
        double total = 0.0;
        for (std::size_t d = 0; d < pool.reach.size(); ++d)
            total += static_cast<double>(pool.reach[d][static_cast<std::size_t>(v)].count());
        double value = total / static_cast<double>(pool.reach.size());
        if (value > best_value) {
            best_value = value;
            best = v;
        }
    }
    return best;
}

enum class SelectionMode { argmax, top_uniform };

/// Adaptive execution under full-adoption feedback. Each adaptive round
/// estimates conditional marginals with fresh conditioned draws restricted
/// to the residual graph (activated nodes absorb every path that enters
/// them, so |cascade(e) \ A| is exactly reachability inside V \ A), then
/// selects by argmax or uniformly from the top-c set. Returns the realized
/// spread |A|.
int adaptive_execute(const ICTask& task, const LiveEdgeDraw& phi,
                     const std::vector<ItemId>& initial, int k, int active_rounds,
                     SelectionMode mode, int top_c, int adaptive_draws, Rng& rng) {
    const DiGraph& graph = task.graph();
    const int n = graph.node_count;

    BitSet activated(static_cast<std::size_t>(n));
    std::vector<bool> taken(static_cast<std::size_t>(n + k), false);
    int used = 0;
    for (ItemId e : initial) {
        ++used;
        taken[static_cast<std::size_t>(e)] = true;
        if (e < n) activated |= ic::cascade_from(graph, e, phi);
    }

    for (; used < k; ++used) {
        if (used >= active_rounds) continue;  // dummy padding rounds

        BitSet residual(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            if (!activated.test(static_cast<std::size_t>(v))) residual.set(static_cast<std::size_t>(v));

        std::vector<double> marginal(static_cast<std::size_t>(n), 0.0);
        for (int d = 0; d < adaptive_draws; ++d) {
            LiveEdgeDraw draw = ic::sample_live(task, rng);
            auto reach = ic::reachability_closure(graph, draw, &residual);
            for (int v = 0; v < n; ++v)
                if (residual.test(static_cast<std::size_t>(v)))
                    marginal[static_cast<std::size_t>(v)] +=
                        static_cast<double>(reach[static_cast<std::size_t>(v)].count());
        }
        for (auto& m : marginal) m /= static_cast<double>(adaptive_draws);

        ItemId pick;
        if (mode == SelectionMode::argmax) {
            int best = -1;
            double best_value = -1.0;
            for (int v = 0; v < n; ++v) {
                if (taken[static_cast<std::size_t>(v)]) continue;
                if (marginal[static_cast<std::size_t>(v)] > best_value) {
                    best_value = marginal[static_cast<std::size_t>(v)];
                    best = v;
                }
            }
            if (best < 0) continue;
            pick = best;
        } else {
            std::vector<ItemId> candidates;
            std::vector<double> values;
            for (int v = 0; v < n + k; ++v) {
                if (taken[static_cast<std::size_t>(v)]) continue;
                candidates.push_back(v);
                values.push_back(v < n ? marginal[static_cast<std::size_t>(v)] : 0.0);
            }
            auto u = top_nonnegative_items(candidates, values, n, static_cast<std::size_t>(top_c));
            pick = u[rng.below(u.size())];
        }

        taken[static_cast<std::size_t>(pick)] = true;
        if (pick < n) activated |= ic::cascade_from(graph, pick, phi);
    }
    return static_cast<int>(activated.count());
}

int fixed_set_spread(const DiGraph& graph, const std::vector<ItemId>& items,
                     const LiveEdgeDraw& phi) {
    std::vector<int> seeds;
    for (ItemId e : items)
        if (e < graph.node_count) seeds.push_back(e);
    return ic::spread(graph, seeds, phi);
}

struct CellPlan {
    Algorithm algorithm;
    int l;
    int k;
    std::size_t algorithm_index;
    std::size_t cell_index;
};

}  // namespace

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "TGP") return Algorithm::TGP;
    if (name == "TRGP") return Algorithm::TRGP;
    if (name == "RMG") return Algorithm::RMG;
    if (name == "GT") return Algorithm::GT;
    if (name == "FULLY_ADAPTIVE") return Algorithm::FULLY_ADAPTIVE;
    if (name == "RANDOM") return Algorithm::RANDOM;
    if (name == "PI_A") return Algorithm::PI_A;
    if (name == "PI_B") return Algorithm::PI_B;
    throw ConfigError("unknown algorithm: " + name);
}

std::string algorithm_to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::TGP: return "TGP";
        case Algorithm::TRGP: return "TRGP";
        case Algorithm::RMG: return "RMG";
        case Algorithm::GT: return "GT";
        case Algorithm::FULLY_ADAPTIVE: return "FULLY_ADAPTIVE";
        case Algorithm::RANDOM: return "RANDOM";
        case Algorithm::PI_A: return "PI_A";
        case Algorithm::PI_B: return "PI_B";
    }
    return "UNKNOWN";
}

int resolve_l(double fraction, int k) {
    int l = static_cast<int>(std::floor(fraction * k + 0.5));
    return std::clamp(l, 1, std::max(1, k - 1));
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        const auto& graph = doc.at("graph");
        if (graph.contains("path")) {
            cfg.graph.path = graph.at("path").get<std::string>();
        } else {
            const auto& random = graph.at("random");
            cfg.graph.nodes = random.at("nodes").get<int>();
            cfg.graph.edges = random.at("edges").get<int>();
            cfg.graph.seed = random.value("seed", 0ULL);
        }
        cfg.m_train = doc.value("m_train", cfg.m_train);
        cfg.m_test = doc.value("m_test", cfg.m_test);
        cfg.k_values = doc.at("k_values").get<std::vector<int>>();
        if (doc.contains("l_values")) cfg.l_values = doc.at("l_values").get<std::vector<int>>();
        cfg.l_fraction = doc.value("l_fraction", -1.0);
        for (const auto& name : doc.at("algorithms"))
            cfg.algorithms.push_back(algorithm_from_string(name.get<std::string>()));
        cfg.repetitions = doc.value("repetitions", cfg.repetitions);
        cfg.master_seed = doc.value("master_seed", 0ULL);
        if (doc.contains("edge_prob_choices"))
            cfg.edge_prob_choices = doc.at("edge_prob_choices").get<std::vector<double>>();
        if (doc.contains("estimator")) {
            const auto& est = doc.at("estimator");
            cfg.estimator.train_draws = est.value("train_draws", cfg.estimator.train_draws);
            cfg.estimator.test_draws = est.value("test_draws", cfg.estimator.test_draws);
            cfg.estimator.adaptive_draws = est.value("adaptive_draws", cfg.estimator.adaptive_draws);
        }
        cfg.threads = doc.value("threads", 0u);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config document: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::vector<std::pair<int, int>> ExperimentConfig::cells() const {
    std::vector<std::pair<int, int>> out;
    for (int k : k_values) {
        if (l_fraction > 0.0) {
            out.emplace_back(resolve_l(l_fraction, k), k);
        } else {
            for (int l : l_values) out.emplace_back(l, k);
        }
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (graph.path.empty() && (graph.nodes < 2 || graph.edges < 1))
        throw ConfigError("graph: give a path or a synthetic spec");
    if (m_train < 1 || m_test < 1) throw ConfigError("m_train and m_test must be positive");
    if (repetitions < 1) throw ConfigError("repetitions must be positive");
    if (k_values.empty()) throw ConfigError("k_values must be non-empty");
    if (algorithms.empty()) throw ConfigError("algorithms must be non-empty");
    if ((l_values.empty() && l_fraction <= 0.0) || (!l_values.empty() && l_fraction > 0.0))
        throw ConfigError("give exactly one of l_values and l_fraction");
    if (edge_prob_choices.empty()) throw ConfigError("edge_prob_choices must be non-empty");
    for (double p : edge_prob_choices)
        if (p <= 0.0 || p > 1.0) throw ConfigError("edge probabilities must lie in (0, 1]");
    if (estimator.train_draws < 1 || estimator.test_draws < 1 || estimator.adaptive_draws < 1)
        throw ConfigError("estimator draw counts must be positive");

    for (auto [l, k] : cells()) {
        if (k < 1) throw ConfigError("k must be positive");
        if (l < 0 || l > k) throw ConfigError("every cell needs 0 <= l <= k");
        for (Algorithm a : algorithms) {
            if (a == Algorithm::TRGP && !(l >= 1 && l < k))
                throw ConfigError("TRGP needs 1 <= l < k in every cell");
            if (a == Algorithm::PI_A && l != k - 1)
                throw ConfigError("PI_A applies only to cells with l = k - 1");
            if (a == Algorithm::PI_B && l != 1)
                throw ConfigError("PI_B applies only to cells with l = 1");
        }
    }
}

ExperimentTable run_experiment(const ExperimentConfig& config) {
    config.validate();

    auto graph = std::make_shared<const DiGraph>(
        config.graph.synthetic()
            ? ic::random_graph(config.graph.nodes, config.graph.edges, config.graph.seed)
            : ic::load_edge_list(config.graph.path));
    const int n = graph->node_count;

    const auto cell_pairs = config.cells();
    std::vector<CellPlan> plan;
    for (std::size_t a = 0; a < config.algorithms.size(); ++a)
        for (std::size_t c = 0; c < cell_pairs.size(); ++c)
            plan.push_back({config.algorithms[a], cell_pairs[c].first, cell_pairs[c].second, a, c});

    int max_k = 0;
    for (auto [l, k] : cell_pairs) max_k = std::max(max_k, k);

    const auto reps = static_cast<std::size_t>(config.repetitions);
    std::vector<std::vector<ResultRow>> rep_rows(reps);

    parallel_for(reps, [&](std::size_t rep) {
        const std::uint64_t ms = config.master_seed;
        const auto rep64 = static_cast<std::uint64_t>(rep);

        // --- sample tasks (disjoint seed streams for train and test) ---
        std::vector<ICTaskPtr> train_tasks, test_tasks;
        for (int i = 0; i < config.m_train; ++i)
            train_tasks.push_back(ic::sample_task(
                graph, config.edge_prob_choices,
                derive_seed({ms, kTagTrainTask, rep64, static_cast<std::uint64_t>(i)}), i));
        for (int i = 0; i < config.m_test; ++i)
            test_tasks.push_back(ic::sample_task(
                graph, config.edge_prob_choices,
                derive_seed({ms, kTagTestTask, rep64, static_cast<std::uint64_t>(i)}), 1000 + i));

        // --- training phase ---
        std::vector<TaskPool> train_pools;
        for (int i = 0; i < config.m_train; ++i) {
            Rng rng(derive_seed({ms, kTagTrainPool, rep64, static_cast<std::uint64_t>(i)}));
            train_pools.push_back(build_pool(*train_tasks[static_cast<std::size_t>(i)],
                                             config.estimator.train_draws, rng));
        }
        std::vector<ItemId> chain = greedy_chain(train_pools, n, max_k);

        std::vector<std::vector<ItemId>> trained(plan.size());
        for (std::size_t p = 0; p < plan.size(); ++p) {
            const CellPlan& cell = plan[p];
            Rng rng(derive_seed({ms, kTagInit, rep64, static_cast<std::uint64_t>(p)}));
            switch (cell.algorithm) {
                case Algorithm::TGP:
                    trained[p].assign(chain.begin(), chain.begin() + cell.l);
                    break;
                case Algorithm::GT:
                    trained[p].assign(chain.begin(), chain.begin() + cell.k);
                    break;
                case Algorithm::TRGP:
                case Algorithm::RMG:
                    trained[p] = random_greedy_init_ic(train_pools, n, cell.l, std::max(cell.l, 1),
                                                       cell.k, rng);
                    break;
                case Algorithm::PI_A:
                    trained[p] = random_greedy_init_ic(train_pools, n, cell.k - 1, cell.k - 1,
                                                       cell.k, rng);
                    break;
                case Algorithm::RANDOM: {
                    Rng sel(derive_seed({ms, kTagRandomSel, rep64, static_cast<std::uint64_t>(p)}));
                    std::vector<ItemId> nodes(static_cast<std::size_t>(n));
                    std::iota(nodes.begin(), nodes.end(), 0);
                    for (int round = 0; round < cell.k && !nodes.empty(); ++round) {
                        std::size_t j = sel.below(nodes.size());
                        trained[p].push_back(nodes[j]);
                        nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(j));
                    }
                    break;
                }
                case Algorithm::FULLY_ADAPTIVE:
                case Algorithm::PI_B:
                    break;  // nothing trained
            }
        }

        // Train/test separation: drawing from a test task before this point
        // is a bug, not a tuning issue.
        for (const auto& task : test_tasks)
            if (task->oracle_calls() != 0)
                throw Error("test-task oracle queried during training");

        // --- test phase ---
        std::vector<TaskPool> test_pools;
        for (int i = 0; i < config.m_test; ++i) {
            Rng rng(derive_seed({ms, kTagTestPool, rep64, static_cast<std::uint64_t>(i)}));
            test_pools.push_back(build_pool(*test_tasks[static_cast<std::size_t>(i)],
                                            config.estimator.test_draws, rng));
        }
        std::vector<LiveEdgeDraw> realizations;
        for (int i = 0; i < config.m_test; ++i) {
            Rng rng(derive_seed({ms, kTagRealization, rep64, static_cast<std::uint64_t>(i)}));
            realizations.push_back(ic::sample_live(*test_tasks[static_cast<std::size_t>(i)], rng));
        }

        std::vector<ResultRow>& rows = rep_rows[rep];
        rows.resize(plan.size());
        for (std::size_t p = 0; p < plan.size(); ++p) {
            const CellPlan& cell = plan[p];
            auto t0 = std::chrono::steady_clock::now();

            double sum = 0.0, sum_sq = 0.0;
            for (int i = 0; i < config.m_test; ++i) {
                const ICTask& task = *test_tasks[static_cast<std::size_t>(i)];
                const LiveEdgeDraw& phi = realizations[static_cast<std::size_t>(i)];
                const TaskPool& pool = test_pools[static_cast<std::size_t>(i)];
                Rng rng(derive_seed({ms, kTagExec, rep64, static_cast<std::uint64_t>(p),
                                     static_cast<std::uint64_t>(i)}));

                double value = 0.0;
                switch (cell.algorithm) {
                    case Algorithm::GT:
                    case Algorithm::RANDOM:
                        value = fixed_set_spread(*graph, trained[p], phi);
                        break;
                    case Algorithm::TGP:
                        value = adaptive_execute(task, phi, trained[p], cell.k, cell.k,
                                                 SelectionMode::argmax, 0,
                                                 config.estimator.adaptive_draws, rng);
                        break;
                    case Algorithm::FULLY_ADAPTIVE:
                        value = adaptive_execute(task, phi, {}, cell.k, cell.k,
                                                 SelectionMode::argmax, 0,
                                                 config.estimator.adaptive_draws, rng);
                        break;
                    case Algorithm::TRGP:
                        value = adaptive_execute(task, phi, trained[p], cell.k, cell.k,
                                                 SelectionMode::top_uniform, cell.k - cell.l,
                                                 config.estimator.adaptive_draws, rng);
                        break;
                    case Algorithm::RMG: {
                        auto completed = nonadaptive_completion(pool, n, trained[p], cell.k);
                        value = ic::spread(*graph, completed, phi);
                        break;
                    }
                    case Algorithm::PI_A: {
                        double w_fixed = std::numbers::e / (1.0 + std::numbers::e);
                        if (rng.next_double() < w_fixed) {
                            value = fixed_set_spread(*graph, trained[p], phi);
                        } else {
                            int e_star = best_singleton_ic(pool, n);
                            value = fixed_set_spread(*graph, {e_star}, phi);
                        }
                        break;
                    }
                    case Algorithm::PI_B: {
                        if (rng.next_double() < 0.5) {
                            value = adaptive_execute(task, phi, {}, cell.k, cell.k - 1,
                                                     SelectionMode::top_uniform, cell.k - 1,
                                                     config.estimator.adaptive_draws, rng);
                        } else {
                            int e_star = best_singleton_ic(pool, n);
                            value = fixed_set_spread(*graph, {e_star}, phi);
                        }
                        break;
                    }
                }
                sum += value;
                sum_sq += value * value;
            }
            double m = static_cast<double>(config.m_test);
            double mean = sum / m;
            double variance =
                config.m_test > 1 ? std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0)) : 0.0;
            auto t1 = std::chrono::steady_clock::now();

            rows[p].algorithm = algorithm_to_string(cell.algorithm);
            rows[p].l = cell.l;
            rows[p].k = cell.k;
            rows[p].repetition = static_cast<int>(rep);
            rows[p].mean_utility = mean;
            rows[p].stderr_ = std::sqrt(variance / m);
            rows[p].wall_ms =
                std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                    .count();
        }
    }, config.threads);

    // Deterministic row order: algorithm x cell (declaration order), then
    // repetition.
    ExperimentTable table;
    table.rows.reserve(plan.size() * reps);
    for (std::size_t p = 0; p < plan.size(); ++p)
        for (std::size_t rep = 0; rep < reps; ++rep) table.rows.push_back(rep_rows[rep][p]);
    return table;
}

namespace {

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

}  // namespace

std::string ExperimentTable::to_csv() const {
    std::ostringstream out;
    out << "#schema=1\n";
    out << "algorithm,l,k,repetition,mean_utility,stderr,wall_ms\n";
    for (const auto& row : rows)
        out << row.algorithm << ',' << row.l << ',' << row.k << ',' << row.repetition << ','
            << format_double(row.mean_utility) << ',' << format_double(row.stderr_) << ','
            << format_double(row.wall_ms) << '\n';
    return out.str();
}

ExperimentTable ExperimentTable::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "#schema=1") throw ParseError("missing #schema=1 line");
    if (!std::getline(in, line) || line != "algorithm,l,k,repetition,mean_utility,stderr,wall_ms")
        throw ParseError("unexpected CSV header");

    ExperimentTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        ResultRow row;
        auto next = [&]() {
            if (!std::getline(ss, field, ',')) throw ParseError("truncated CSV row: " + line);
            return field;
        };
        row.algorithm = next();
        row.l = std::stoi(next());
        row.k = std::stoi(next());
        row.repetition = std::stoi(next());
        row.mean_utility = std::stod(next());
        row.stderr_ = std::stod(next());
        row.wall_ms = std::stod(next());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string ExperimentTable::to_json() const {
    nlohmann::json doc;
    doc["schema"] = 1;
    auto out_rows = nlohmann::json::array();
    for (const auto& row : rows)
        out_rows.push_back({{"algorithm", row.algorithm},
                            {"l", row.l},
                            {"k", row.k},
                            {"repetition", row.repetition},
                            {"mean_utility", row.mean_utility},
                            {"stderr", row.stderr_}});
    doc["rows"] = std::move(out_rows);
    return doc.dump();
}

ExperimentTable::Aggregate ExperimentTable::aggregate(const std::string& algorithm, int l,
                                                      int k) const {
    double sum = 0.0, sum_sq = 0.0;
    int count = 0;
    for (const auto& row : rows) {
        if (row.algorithm != algorithm || row.l != l || row.k != k) continue;
        sum += row.mean_utility;
        sum_sq += row.mean_utility * row.mean_utility;
        ++count;
    }
    Aggregate agg;
    agg.repetitions = count;
    if (count == 0) return agg;
    agg.mean = sum / count;
    double variance = count > 1 ? std::max(0.0, (sum_sq - count * agg.mean * agg.mean) / (count - 1))
                                : 0.0;
    agg.stderr_ = std::sqrt(variance / count);
    return agg;
}

void emit_csv(const ExperimentTable& table, const std::string& path) {
    if (table.rows.empty()) throw IoError("refusing to write an empty table");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write CSV: " + path);
    out << table.to_csv();
    if (!out) throw IoError("CSV write failed: " + path);
}

std::string plot_data_json(const ExperimentTable& table, const ExperimentConfig& config) {
    if (table.rows.empty()) throw IoError("empty table");
    nlohmann::json panels = nlohmann::json::array();

    if (config.l_fraction > 0.0) {
        nlohmann::json panel;
        panel["x"] = "k";
        panel["l_fraction"] = config.l_fraction;
        nlohmann::json series;
        for (Algorithm a : config.algorithms) {
            auto points = nlohmann::json::array();
            for (int k : config.k_values) {
                int l = resolve_l(config.l_fraction, k);
                auto agg = table.aggregate(algorithm_to_string(a), l, k);
                points.push_back(
                    {{"k", k}, {"l", l}, {"mean", agg.mean}, {"stderr", agg.stderr_}});
            }
            series[algorithm_to_string(a)] = std::move(points);
        }
        panel["series"] = std::move(series);
        panels.push_back(std::move(panel));
    } else {
        for (int k : config.k_values) {
            nlohmann::json panel;
            panel["x"] = "l";
            panel["k"] = k;
            nlohmann::json series;
            for (Algorithm a : config.algorithms) {
                auto points = nlohmann::json::array();
                for (int l : config.l_values) {
                    auto agg = table.aggregate(algorithm_to_string(a), l, k);
                    points.push_back({{"l", l}, {"mean", agg.mean}, {"stderr", agg.stderr_}});
                }
                series[algorithm_to_string(a)] = std::move(points);
            }
            panel["series"] = std::move(series);
            panels.push_back(std::move(panel));
        }
    }

    nlohmann::json doc;
    doc["panels"] = std::move(panels);
    return doc.dump();
}

void emit_plot_data(const ExperimentTable& table, const ExperimentConfig& config,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write plot data: " + path);
    out << plot_data_json(table, config);
    if (!out) throw IoError("plot data write failed: " + path);
}

}  // namespace submeta::harness
