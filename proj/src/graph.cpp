#include "submeta/ic/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "submeta/errors.hpp"
#include "submeta/util/rng.hpp"

namespace submeta::ic {

DiGraph make_graph(int node_count, std::vector<std::pair<int, int>> edges) {
    for (const auto& [src, dst] : edges) {
        if (src < 0 || dst < 0) throw ParseError("negative node id");
        if (src == dst) throw ParseError("self-loop edge " + std::to_string(src));
        if (src >= node_count || dst >= node_count)
            throw ParseError("edge endpoint outside node range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    DiGraph g;
    g.node_count = node_count;
    g.edges = std::move(edges);
    g.out_offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (const auto& [src, dst] : g.edges) ++g.out_offsets[static_cast<std::size_t>(src) + 1];
    for (int v = 0; v < node_count; ++v)
        g.out_offsets[static_cast<std::size_t>(v) + 1] += g.out_offsets[static_cast<std::size_t>(v)];
    g.out_edges.resize(g.edges.size());
    std::vector<int> cursor(g.out_offsets.begin(), g.out_offsets.end() - 1);
    for (int e = 0; e < g.edge_count(); ++e)
        g.out_edges[static_cast<std::size_t>(cursor[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].first)]++)] = e;
    return g;
}

DiGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path);

    std::vector<std::pair<int, int>> edges;
    int declared_nodes = -1;
    int max_id = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (trimmed[first] == '#') continue;

        std::istringstream ss(trimmed);
        std::string a;
        ss >> a;
        if (a == "nodes") {
            if (!(ss >> declared_nodes) || declared_nodes <= 0)
                throw ParseError("bad nodes header at line " + std::to_string(line_no));
            continue;
        }
        long src, dst;
        try {
            src = std::stol(a);
        } catch (...) {
            throw ParseError("malformed edge at line " + std::to_string(line_no));
        }
        if (!(ss >> dst)) throw ParseError("malformed edge at line " + std::to_string(line_no));
        std::string rest;
        if (ss >> rest) throw ParseError("trailing tokens at line " + std::to_string(line_no));
        if (src < 0 || dst < 0) throw ParseError("negative node id at line " + std::to_string(line_no));
        edges.emplace_back(static_cast<int>(src), static_cast<int>(dst));
        max_id = std::max(max_id, static_cast<int>(std::max(src, dst)));
    }
    int nodes = declared_nodes > 0 ? declared_nodes : max_id + 1;
    if (nodes <= 0) throw ParseError("empty edge list and no nodes header");
    return make_graph(nodes, std::move(edges));
}

void write_edge_list(const DiGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write edge list: " + path);
    out << "nodes " << graph.node_count << "\n";
    for (const auto& [src, dst] : graph.edges) out << src << ' ' << dst << "\n";
    if (!out) throw IoError("write failed: " + path);
}

DiGraph random_graph(int node_count, int edge_count, std::uint64_t seed) {
    if (node_count < 2) throw ConfigError("random graph needs at least 2 nodes");
    long max_edges = static_cast<long>(node_count) * (node_count - 1);
    if (edge_count < 0 || edge_count > max_edges)
        throw ConfigError("edge count outside [0, n*(n-1)]");

    Rng rng(derive_seed({seed, 0x6772617068ULL}));
    std::set<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < edge_count) {
        int src = static_cast<int>(rng.below(static_cast<std::uint64_t>(node_count)));
        int dst = static_cast<int>(rng.below(static_cast<std::uint64_t>(node_count)));
        if (src != dst) chosen.insert({src, dst});
    }
    return make_graph(node_count, {chosen.begin(), chosen.end()});
}

}  // namespace submeta::ic
