#include "submeta/ic/adapter.hpp"

#include <cmath>

#include "submeta/errors.hpp"

namespace submeta::ic {

namespace {

/// Trit j of node v's state: status of edge j as revealed by seeding v.
StateValue encode_node_state(const DiGraph& graph, int v, const LiveEdgeDraw& draw) {
    BitSet reach = cascade_from(graph, v, draw);
    StateValue state = 0;
    StateValue place = 1;
    for (int e = 0; e < graph.edge_count(); ++e) {
        if (reach.test(static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].first))) {
            StateValue trit = draw.live.test(static_cast<std::size_t>(e)) ? 1 : 2;
            state += trit * place;
        }
        place *= 3;
    }
    return state;
}

Realization encode_realization(const DiGraph& graph, const LiveEdgeDraw& draw) {
    Realization phi;
    phi.states.reserve(static_cast<std::size_t>(graph.node_count));
    for (int v = 0; v < graph.node_count; ++v) phi.states.push_back(encode_node_state(graph, v, draw));
    return phi;
}

/// Rebuilds the draw from per-node encodings: every edge's status appears
/// in its own source node's state (a node always reveals its out-edges).
/// All digit streams advance in step, one trit per edge index.
LiveEdgeDraw decode_realization_full(const DiGraph& graph, const Realization& phi) {
    LiveEdgeDraw draw{BitSet(static_cast<std::size_t>(graph.edge_count()))};
    std::vector<StateValue> digits(phi.states.begin(), phi.states.end());
    for (int e = 0; e < graph.edge_count(); ++e) {
        int src = graph.edges[static_cast<std::size_t>(e)].first;
        for (int v = 0; v < graph.node_count; ++v) {
            StateValue trit = digits[static_cast<std::size_t>(v)] % 3;
            digits[static_cast<std::size_t>(v)] /= 3;
            if (v == src && trit == 1) draw.live.set(static_cast<std::size_t>(e));
        }
    }
    return draw;
}

/// Folds a partial realization of encoded node states back into revealed
/// edge statuses.
CascadeObservation decode_observation(const DiGraph& graph, const PartialRealization& psi) {
    CascadeObservation obs = empty_observation(graph);
    for (const auto& [item, state] : psi.entries()) {
        if (is_dummy(item, graph.node_count)) continue;
        obs.seeds.push_back(item);
        StateValue digits = state;
        for (int e = 0; e < graph.edge_count(); ++e) {
            StateValue trit = digits % 3;
            digits /= 3;
            if (trit == 0) continue;
            bool live = trit == 1;
            // Cross-check overlapping revelations between observed nodes.
            if (obs.revealed(graph, e) &&
                obs.live_status.test(static_cast<std::size_t>(e)) != live)
                throw InconsistentObservation("conflicting edge statuses in observation");
            if (live) {
                obs.live_status.set(static_cast<std::size_t>(e));
                obs.activated.set(static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].first));
            } else {
                obs.live_status.reset(static_cast<std::size_t>(e));
                obs.activated.set(static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].first));
            }
        }
    }
    // Close the activated set: seeds plus targets of revealed live edges.
    for (int s : obs.seeds) obs.activated.set(static_cast<std::size_t>(s));
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < graph.edge_count(); ++e) {
            auto [src, dst] = graph.edges[static_cast<std::size_t>(e)];
            if (obs.activated.test(static_cast<std::size_t>(src)) &&
                obs.live_status.test(static_cast<std::size_t>(e)) &&
                !obs.activated.test(static_cast<std::size_t>(dst))) {
                obs.activated.set(static_cast<std::size_t>(dst));
                changed = true;
            }
        }
    }
    return obs;
}

}  // namespace

IcInstance as_task(const ICTaskPtr& task) {
    const DiGraph& graph = task->graph();
    const int n_edges = graph.edge_count();
    if (n_edges > kMaxEncodableEdges)
        throw TooLarge("node-state encoding supports at most " +
                       std::to_string(kMaxEncodableEdges) + " edges; use the experiment "
                       "harness for larger graphs");

    IcInstance out;
    out.source = task;
    out.instance.n = graph.node_count;
    out.instance.n_states = 0;  // derived states; not a dense range

    auto graph_ptr = task->graph_ptr();
    auto source = task;
    auto utility = [graph_ptr, source](const ItemSet& items, const Realization& phi) -> double {
        LiveEdgeDraw draw = decode_realization_full(*graph_ptr, phi);
        std::vector<int> seeds(items.begin(), items.end());
        return static_cast<double>(spread(*graph_ptr, seeds, draw));
    };
    out.instance.tasks.push_back(
        std::make_shared<CallbackTask>(task->id(), true, true, std::move(utility)));

    if (n_edges <= kMaxExactEdges) {
        // Explicit product prior over all live-edge draws.
        std::vector<WeightedRealization> support;
        support.reserve(1u << n_edges);
        for (std::uint32_t mask = 0; mask < (1u << n_edges); ++mask) {
            LiveEdgeDraw draw{BitSet(static_cast<std::size_t>(n_edges))};
            double prob = 1.0;
            for (int e = 0; e < n_edges; ++e) {
                double p = task->edge_prob()[static_cast<std::size_t>(e)];
                if (mask & (1u << e)) {
                    draw.live.set(static_cast<std::size_t>(e));
                    prob *= p;
                } else {
                    prob *= 1.0 - p;
                }
            }
            Realization phi = encode_realization(graph, draw);
            phi.index = static_cast<int>(mask);
            support.push_back({std::move(phi), prob});
        }
        double total = 0.0;
        for (const auto& wr : support) total += wr.prob;
        for (auto& wr : support) wr.prob /= total;
        out.instance.prior = Prior::explicit_prior(std::move(support));
        return out;
    }

    auto sampler = [graph_ptr, source](Rng& rng) {
        LiveEdgeDraw draw = sample_live(*source, rng);
        return encode_realization(*graph_ptr, draw);
    };
    auto conditional = [graph_ptr, source](const PartialRealization& psi, Rng& rng) {
        CascadeObservation obs = decode_observation(*graph_ptr, psi);
        LiveEdgeDraw draw = sample_live_conditioned(*source, obs, rng);
        return encode_realization(*graph_ptr, draw);
    };
    out.instance.prior = Prior::generative(std::move(sampler), std::move(conditional));
    return out;
}

}  // namespace submeta::ic
