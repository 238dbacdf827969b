#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#ifndef SUBMETA_CLI_PATH
#define SUBMETA_CLI_PATH "./submeta"
#endif

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    std::string command = std::string(SUBMETA_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_CASE("check-submodularity --remark2 reports the (0.5, 1) violation") {
    auto result = run_cli("--json check-submodularity --remark2");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("\"holds\":false") != std::string::npos);
    CHECK(result.output.find("\"delta_psi\":0.5") != std::string::npos);
    CHECK(result.output.find("\"delta_psi_prime\":1.0") != std::string::npos);
}

TEST_CASE("unknown flags exit with the usage code") {
    auto result = run_cli("check-submodularity --definitely-not-a-flag");
    CHECK(result.exit_code == 2);
}

TEST_CASE("missing arguments exit with the usage code") {
    auto result = run_cli("check-submodularity");
    CHECK(result.exit_code == 2);
}

TEST_CASE("verify-ratios monotone run passes and prints the minimum ratio") {
    auto result = run_cli("--json verify-ratios --regime monotone --count 8 --seed 7");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("\"violations\":0") != std::string::npos);
    CHECK(result.output.find("\"min_ratio\"") != std::string::npos);
}

TEST_CASE("identical argv and seed give byte-identical JSON") {
    auto a = run_cli("--json verify-ratios --regime l1 --count 4 --seed 3");
    auto b = run_cli("--json verify-ratios --regime l1 --count 4 --seed 3");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    auto c = run_cli("--json check-submodularity --remark2");
    auto d = run_cli("--json check-submodularity --remark2");
    CHECK(c.output == d.output);
}

TEST_CASE("gen-graph writes a loadable edge list") {
    auto result = run_cli("gen-graph --kind random --nodes 20 --edges 40 --seed 3 "
                          "--output cli_graph_test.txt");
    CHECK(result.exit_code == 0);
    std::ifstream in("cli_graph_test.txt");
    REQUIRE(in.good());
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line == "nodes 20");
    in.close();
    std::remove("cli_graph_test.txt");
}

TEST_CASE("run-experiment emits deterministic JSON and a CSV") {
    std::string config = R"({
        "graph": {"random": {"nodes": 25, "edges": 70, "seed": 1}},
        "m_train": 2, "m_test": 2,
        "k_values": [3], "l_values": [1],
        "algorithms": ["GT", "TGP"],
        "repetitions": 2, "master_seed": 5,
        "estimator": {"train_draws": 16, "test_draws": 16, "adaptive_draws": 8},
        "threads": 1
    })";
    {
        std::ofstream out("cli_exp_config.json");
        out << config;
    }
    auto a = run_cli("--json run-experiment --config cli_exp_config.json --output cli_exp_out.csv");
    auto b = run_cli("--json run-experiment --config cli_exp_config.json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"rows\"") != std::string::npos);

    std::ifstream csv("cli_exp_out.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "#schema=1");
    csv.close();
    std::remove("cli_exp_config.json");
    std::remove("cli_exp_out.csv");

    auto bad = run_cli("run-experiment --config does_not_exist.json");
    CHECK(bad.exit_code != 0);
}
