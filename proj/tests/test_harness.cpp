#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "helpers.hpp"
#include "submeta/core/evaluate.hpp"
#include "submeta/errors.hpp"
#include "submeta/harness/experiment.hpp"
#include "submeta/ic/adapter.hpp"
#include "submeta/ic/graph.hpp"
#include "submeta/policies/two_phase.hpp"

using namespace submeta;
using namespace submeta::harness;
using test::approx_equal;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.graph.nodes = 30;
    cfg.graph.edges = 90;
    cfg.graph.seed = 5;
    cfg.m_train = 3;
    cfg.m_test = 3;
    cfg.k_values = {4};
    cfg.l_values = {2};
    cfg.algorithms = {Algorithm::TGP, Algorithm::RMG, Algorithm::GT};
    cfg.repetitions = 3;
    cfg.master_seed = 17;
    cfg.estimator = {32, 32, 16};
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST_CASE("fractional l resolution") {
    CHECK(resolve_l(0.8, 10) == 8);
    CHECK(resolve_l(0.8, 4) == 3);   // 3.2 rounds half-up to 3
    CHECK(resolve_l(0.8, 6) == 5);   // 4.8 -> 5
    CHECK(resolve_l(0.2, 10) == 2);
    CHECK(resolve_l(0.05, 4) == 1);  // clamped to at least 1
    CHECK(resolve_l(0.99, 4) == 3);  // clamped to k - 1
}

TEST_CASE("config parsing and validation") {
    SUBCASE("documented JSON shape parses") {
        std::string doc = R"({
            "graph": {"random": {"nodes": 40, "edges": 120, "seed": 2}},
            "m_train": 4, "m_test": 5,
            "k_values": [4, 6],
            "l_fraction": 0.8,
            "algorithms": ["TGP", "GT"],
            "repetitions": 2,
            "master_seed": 9,
            "edge_prob_choices": [0.1, 0.01],
            "estimator": {"train_draws": 16, "test_draws": 16, "adaptive_draws": 8}
        })";
        auto cfg = ExperimentConfig::from_json(doc);
        CHECK(cfg.m_test == 5);
        CHECK(cfg.cells() == std::vector<std::pair<int, int>>{{3, 4}, {5, 6}});
    }

    SUBCASE("invalid configs are rejected") {
        auto cfg = small_config();
        cfg.l_values = {5};  // l > k
        CHECK_THROWS_AS(cfg.validate(), ConfigError);

        cfg = small_config();
        cfg.k_values.clear();
        CHECK_THROWS_AS(cfg.validate(), ConfigError);

        cfg = small_config();
        cfg.l_fraction = 0.5;  // both l_values and l_fraction
        CHECK_THROWS_AS(cfg.validate(), ConfigError);

        cfg = small_config();
        cfg.algorithms = {Algorithm::PI_A};  // needs l = k - 1
        CHECK_THROWS_AS(cfg.validate(), ConfigError);

        CHECK_THROWS_AS(ExperimentConfig::from_json("{"), ConfigError);
    }
}

TEST_CASE("experiment on a deterministic instance matches the exact evaluator") {
    // Edge probability 1 makes the cascade deterministic, so a single
    // repetition with one task is exact and comparable to the core path.
    ExperimentConfig cfg;
    cfg.graph.nodes = 0;  // replaced by a file below
    auto graph = ic::make_graph(5, {{0, 1}, {1, 2}, {3, 4}});
    std::string path = "det_graph.txt";
    ic::write_edge_list(graph, path);
    cfg.graph.path = path;
    cfg.m_train = 1;
    cfg.m_test = 1;
    cfg.k_values = {2};
    cfg.l_values = {1};
    cfg.algorithms = {Algorithm::GT, Algorithm::TGP};
    cfg.repetitions = 1;
    cfg.master_seed = 4;
    cfg.edge_prob_choices = {1.0};
    cfg.estimator = {8, 8, 8};
    cfg.threads = 1;

    auto table = run_experiment(cfg);
    REQUIRE(table.rows.size() == 2);

    // Core exact path: same deterministic task through the adapter.
    auto shared = std::make_shared<const ic::DiGraph>(graph);
    auto ic_task = ic::sample_task(shared, {1.0}, 0);
    auto bridged = ic::as_task(ic_task);
    auto chain = tgp_train(bridged.instance.tasks, bridged.instance.prior, 2);
    double exact = f_avg(*std::make_shared<FixedSetPolicy>(5, 2, chain), bridged.instance.tasks,
                         bridged.instance.prior)
                       .mean;
    for (const auto& row : table.rows) CHECK(approx_equal(row.mean_utility, exact));
    std::remove(path.c_str());
}

TEST_CASE("identical master seeds give identical tables") {
    auto cfg = small_config();
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    CHECK(a.to_json() == b.to_json());
    // Every field except the wall clock matches row by row.
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean_utility == b.rows[i].mean_utility);
        CHECK(a.rows[i].stderr_ == b.rows[i].stderr_);
    }

    cfg.master_seed = 18;
    auto c = run_experiment(cfg);
    CHECK(a.to_json() != c.to_json());
}

TEST_CASE("parallel and serial runs agree") {
    auto cfg = small_config();
    cfg.threads = 1;
    auto serial = run_experiment(cfg);
    cfg.threads = 2;
    auto parallel = run_experiment(cfg);
    CHECK(serial.to_json() == parallel.to_json());
}

TEST_CASE("the random baseline does not beat greedy training") {
    ExperimentConfig cfg = small_config();
    cfg.algorithms = {Algorithm::GT, Algorithm::RANDOM};
    cfg.repetitions = 40;
    cfg.m_test = 4;
    auto table = run_experiment(cfg);
    auto gt = table.aggregate("GT", 2, 4);
    auto random = table.aggregate("RANDOM", 2, 4);
    CHECK(random.mean <= gt.mean + 2.0 * std::hypot(gt.stderr_, random.stderr_));
}

TEST_CASE("aggregate stderr shrinks with more repetitions") {
    int passes = 0;
    for (int trial = 0; trial < 3; ++trial) {
        auto cfg = small_config();
        cfg.algorithms = {Algorithm::GT};
        cfg.master_seed = 100 + static_cast<std::uint64_t>(trial);
        cfg.repetitions = 24;
        auto small = run_experiment(cfg);
        cfg.repetitions = 96;
        auto big = run_experiment(cfg);
        if (big.aggregate("GT", 2, 4).stderr_ <= 0.6 * small.aggregate("GT", 2, 4).stderr_)
            ++passes;
    }
    CHECK(passes >= 2);
}

TEST_CASE("CSV round trip and schema") {
    auto cfg = small_config();
    cfg.repetitions = 2;
    auto table = run_experiment(cfg);
    std::string csv = table.to_csv();
    CHECK(csv.rfind("#schema=1\n", 0) == 0);
    auto parsed = ExperimentTable::from_csv(csv);
    REQUIRE(parsed.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(parsed.rows[i].algorithm == table.rows[i].algorithm);
        CHECK(parsed.rows[i].l == table.rows[i].l);
        CHECK(parsed.rows[i].mean_utility == table.rows[i].mean_utility);
        CHECK(parsed.rows[i].wall_ms == table.rows[i].wall_ms);
    }

    std::string path = "table_test.csv";
    emit_csv(table, path);
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == csv);
    std::remove(path.c_str());

    ExperimentTable empty;
    CHECK_THROWS_AS(emit_csv(empty, "nope.csv"), IoError);
}

TEST_CASE("plot data groups one series per algorithm") {
    auto cfg = small_config();
    cfg.l_values = {1, 2};
    cfg.repetitions = 2;
    auto table = run_experiment(cfg);
    auto doc = plot_data_json(table, cfg);
    CHECK(doc.find("\"panels\"") != std::string::npos);
    CHECK(doc.find("\"TGP\"") != std::string::npos);
    CHECK(doc.find("\"x\":\"l\"") != std::string::npos);

    // Fractional sweep gets an x = k panel.
    auto cfg2 = small_config();
    cfg2.l_values.clear();
    cfg2.l_fraction = 0.5;
    cfg2.k_values = {2, 4};
    cfg2.repetitions = 2;
    auto table2 = run_experiment(cfg2);
    auto doc2 = plot_data_json(table2, cfg2);
    CHECK(doc2.find("\"x\":\"k\"") != std::string::npos);
}

TEST_CASE("one row per (algorithm, l, k, repetition) cell") {
    auto cfg = small_config();
    cfg.k_values = {3, 4};
    cfg.l_values = {1, 2};
    cfg.repetitions = 2;
    auto table = run_experiment(cfg);
    CHECK(table.rows.size() == 3u * 4u * 2u);
    std::set<std::tuple<std::string, int, int, int>> seen;
    for (const auto& row : table.rows)
        CHECK(seen.insert({row.algorithm, row.l, row.k, row.repetition}).second);
}
