#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace submeta::ic {

/// Directed graph with CSR out-adjacency. Parallel edges are collapsed and
/// self-loops rejected; edge indices are stable (sorted by source, target).
struct DiGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> out_offsets;   // size node_count + 1
    std::vector<int> out_edges;     // edge indices grouped by source

    int edge_count() const { return static_cast<int>(edges.size()); }
};

DiGraph make_graph(int node_count, std::vector<std::pair<int, int>> edges);

/// Whitespace-separated "source target" pairs, "#"-prefixed comments, and
/// an optional "nodes N" header; without the header the node count is
/// max id + 1. Throws ParseError on malformed lines or negative ids.
DiGraph load_edge_list(const std::string& path);

void write_edge_list(const DiGraph& graph, const std::string& path);

/// Uniform random simple directed graph with the requested edge count.
DiGraph random_graph(int node_count, int edge_count, std::uint64_t seed);

}  // namespace submeta::ic
