#include "submeta/ic/cascade.hpp"

#include <json.hpp>

#include "submeta/errors.hpp"

namespace submeta::ic {

ICTaskPtr sample_task(std::shared_ptr<const DiGraph> graph, const std::vector<double>& choices,
                      std::uint64_t seed, int id) {
    if (choices.empty()) throw ConfigError("probability choice set is empty");
    for (double p : choices)
        if (p <= 0.0 || p > 1.0) throw ConfigError("edge probabilities must lie in (0, 1]");

    Rng rng(derive_seed({seed, 0x7461736bULL}));
    std::vector<double> probs(static_cast<std::size_t>(graph->edge_count()));
    for (auto& p : probs) p = choices[rng.below(choices.size())];
    return std::make_shared<ICTask>(std::move(graph), std::move(probs), id);
}

std::string task_spec_to_json(const TaskSpec& spec) {
    nlohmann::json doc;
    doc["seed"] = spec.seed;
    doc["choices"] = spec.choices;
    if (!spec.edge_probs.empty()) doc["edge_probs"] = spec.edge_probs;
    return doc.dump();
}

TaskSpec task_spec_from_json(const std::string& text) {
    try {
        nlohmann::json doc = nlohmann::json::parse(text);
        TaskSpec spec;
        spec.seed = doc.value("seed", 0ULL);
        if (doc.contains("choices")) spec.choices = doc.at("choices").get<std::vector<double>>();
        if (doc.contains("edge_probs"))
            spec.edge_probs = doc.at("edge_probs").get<std::vector<double>>();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid task document: ") + e.what());
    }
}

ICTaskPtr realize_task(std::shared_ptr<const DiGraph> graph, const TaskSpec& spec, int id) {
    if (!spec.edge_probs.empty()) {
        if (static_cast<int>(spec.edge_probs.size()) != graph->edge_count())
            throw ConfigError("edge_probs length does not match the graph");
        for (double p : spec.edge_probs)
            if (p <= 0.0 || p > 1.0) throw ConfigError("edge probabilities must lie in (0, 1]");
        return std::make_shared<ICTask>(std::move(graph), spec.edge_probs, id);
    }
    return sample_task(std::move(graph), spec.choices, spec.seed, id);
}

LiveEdgeDraw sample_live(const ICTask& task, Rng& rng) {
    task.count_draw();
    const auto& probs = task.edge_prob();
    LiveEdgeDraw draw{BitSet(probs.size())};
    for (std::size_t e = 0; e < probs.size(); ++e)
        if (rng.bernoulli(probs[e])) draw.live.set(e);
    return draw;
}

CascadeObservation empty_observation(const DiGraph& graph) {
    return {BitSet(static_cast<std::size_t>(graph.node_count)),
            BitSet(static_cast<std::size_t>(graph.edge_count())),
            {}};
}

BitSet cascade_from(const DiGraph& graph, int seed, const LiveEdgeDraw& draw) {
    BitSet reached(static_cast<std::size_t>(graph.node_count));
    std::vector<int> frontier{seed};
    reached.set(static_cast<std::size_t>(seed));
    while (!frontier.empty()) {
        int v = frontier.back();
        frontier.pop_back();
        for (int i = graph.out_offsets[static_cast<std::size_t>(v)];
             i < graph.out_offsets[static_cast<std::size_t>(v) + 1]; ++i) {
            int e = graph.out_edges[static_cast<std::size_t>(i)];
            if (!draw.live.test(static_cast<std::size_t>(e))) continue;
            int w = graph.edges[static_cast<std::size_t>(e)].second;
            if (!reached.test(static_cast<std::size_t>(w))) {
                reached.set(static_cast<std::size_t>(w));
                frontier.push_back(w);
            }
        }
    }
    return reached;
}

void observe_seed(const DiGraph& graph, CascadeObservation& obs, int seed,
                  const LiveEdgeDraw& draw) {
    if (seed < 0 || seed >= graph.node_count) throw ConfigError("seed node out of range");
    obs.seeds.push_back(seed);
    BitSet reach = cascade_from(graph, seed, draw);
    obs.activated |= reach;
    // Every edge out of an activated node is revealed; copy its status.
    for (int e = 0; e < graph.edge_count(); ++e) {
        if (obs.activated.test(static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].first))) {
            if (draw.live.test(static_cast<std::size_t>(e)))
                obs.live_status.set(static_cast<std::size_t>(e));
            else
                obs.live_status.reset(static_cast<std::size_t>(e));
        }
    }
}

void validate_observation(const DiGraph& graph, const CascadeObservation& obs) {
    if (obs.activated.size() != static_cast<std::size_t>(graph.node_count) ||
        obs.live_status.size() != static_cast<std::size_t>(graph.edge_count()))
        throw InconsistentObservation("observation shaped for a different graph");
    for (int seed : obs.seeds)
        if (seed < 0 || seed >= graph.node_count || !obs.activated.test(static_cast<std::size_t>(seed)))
            throw InconsistentObservation("seed not activated");
    for (int e = 0; e < graph.edge_count(); ++e) {
        auto [src, dst] = graph.edges[static_cast<std::size_t>(e)];
        if (obs.activated.test(static_cast<std::size_t>(src)) &&
            obs.live_status.test(static_cast<std::size_t>(e)) &&
            !obs.activated.test(static_cast<std::size_t>(dst)))
            throw InconsistentObservation("activated set not closed under revealed live edges");
    }
}

LiveEdgeDraw sample_live_conditioned(const ICTask& task, const CascadeObservation& obs, Rng& rng) {
    const DiGraph& graph = task.graph();
    validate_observation(graph, obs);
    task.count_draw();
    LiveEdgeDraw draw{BitSet(static_cast<std::size_t>(graph.edge_count()))};
    for (int e = 0; e < graph.edge_count(); ++e) {
        bool live;
        if (obs.revealed(graph, e))
            live = obs.live_status.test(static_cast<std::size_t>(e));
        else
            live = rng.bernoulli(task.edge_prob()[static_cast<std::size_t>(e)]);
        if (live) draw.live.set(static_cast<std::size_t>(e));
    }
    return draw;
}

int spread(const DiGraph& graph, const std::vector<int>& seeds, const LiveEdgeDraw& draw) {
    if (seeds.empty()) return 0;
    BitSet reached(static_cast<std::size_t>(graph.node_count));
    std::vector<int> frontier;
    for (int s : seeds) {
        if (s < 0 || s >= graph.node_count) throw ConfigError("seed node out of range");
        if (!reached.test(static_cast<std::size_t>(s))) {
            reached.set(static_cast<std::size_t>(s));
            frontier.push_back(s);
        }
    }
    while (!frontier.empty()) {
        int v = frontier.back();
        frontier.pop_back();
        for (int i = graph.out_offsets[static_cast<std::size_t>(v)];
             i < graph.out_offsets[static_cast<std::size_t>(v) + 1]; ++i) {
            int e = graph.out_edges[static_cast<std::size_t>(i)];
            if (!draw.live.test(static_cast<std::size_t>(e))) continue;
            int w = graph.edges[static_cast<std::size_t>(e)].second;
            if (!reached.test(static_cast<std::size_t>(w))) {
                reached.set(static_cast<std::size_t>(w));
                frontier.push_back(w);
            }
        }
    }
    return static_cast<int>(reached.count());
}

std::vector<BitSet> reachability_closure(const DiGraph& graph, const LiveEdgeDraw& draw,
                                         const BitSet* active) {
    const int n = graph.node_count;
    auto is_active = [&](int v) {
        return active == nullptr || active->test(static_cast<std::size_t>(v));
    };

    // Iterative Tarjan; SCCs are emitted in reverse topological order of
    // the condensation, so successor closures are ready when needed.
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0), disc(static_cast<std::size_t>(n), -1);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> scc_nodes;
    int timer = 0;

    struct Frame {
        int v;
        int edge_cursor;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1 || !is_active(root)) continue;
        call.push_back({root, graph.out_offsets[static_cast<std::size_t>(root)]});
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;

        while (!call.empty()) {
            Frame& frame = call.back();
            int v = frame.v;
            if (frame.edge_cursor < graph.out_offsets[static_cast<std::size_t>(v) + 1]) {
                int e = graph.out_edges[static_cast<std::size_t>(frame.edge_cursor++)];
                if (!draw.live.test(static_cast<std::size_t>(e))) continue;
                int w = graph.edges[static_cast<std::size_t>(e)].second;
                if (!is_active(w)) continue;
                if (disc[static_cast<std::size_t>(w)] == -1) {
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    call.push_back({w, graph.out_offsets[static_cast<std::size_t>(w)]});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(v)] =
                        std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(v)] == disc[static_cast<std::size_t>(v)]) {
                    scc_nodes.emplace_back();
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        comp[static_cast<std::size_t>(w)] = static_cast<int>(scc_nodes.size()) - 1;
                        scc_nodes.back().push_back(w);
                    } while (w != v);
                }
                call.pop_back();
                if (!call.empty()) {
                    int parent = call.back().v;
                    low[static_cast<std::size_t>(parent)] =
                        std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
                }
            }
        }
    }

    // Union closures along condensation edges, in SCC emission order.
    std::vector<BitSet> scc_reach(scc_nodes.size());
    for (std::size_t c = 0; c < scc_nodes.size(); ++c) {
        BitSet reach(static_cast<std::size_t>(n));
        for (int v : scc_nodes[c]) reach.set(static_cast<std::size_t>(v));
        for (int v : scc_nodes[c]) {
            for (int i = graph.out_offsets[static_cast<std::size_t>(v)];
                 i < graph.out_offsets[static_cast<std::size_t>(v) + 1]; ++i) {
                int e = graph.out_edges[static_cast<std::size_t>(i)];
                if (!draw.live.test(static_cast<std::size_t>(e))) continue;
                int w = graph.edges[static_cast<std::size_t>(e)].second;
                if (!is_active(w)) continue;
                int wc = comp[static_cast<std::size_t>(w)];
                if (wc != static_cast<int>(c)) reach |= scc_reach[static_cast<std::size_t>(wc)];
            }
        }
        scc_reach[c] = std::move(reach);
    }

    std::vector<BitSet> out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (comp[static_cast<std::size_t>(v)] >= 0)
            out[static_cast<std::size_t>(v)] = scc_reach[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
        else
            out[static_cast<std::size_t>(v)] = BitSet(static_cast<std::size_t>(n));
    }
    return out;
}

}  // namespace submeta::ic
