#pragma once

#include <atomic>
#include <memory>
#include <vector>

#include "submeta/ic/graph.hpp"
#include "submeta/util/bitset.hpp"
#include "submeta/util/rng.hpp"

namespace submeta::ic {

/// One influence task: per-edge propagation probabilities on a shared
/// graph. Draw sampling is counted so harnesses can enforce train/test
/// separation.
class ICTask {
  public:
    ICTask(std::shared_ptr<const DiGraph> graph, std::vector<double> edge_prob, int id)
        : graph_(std::move(graph)), edge_prob_(std::move(edge_prob)), id_(id) {}

    const DiGraph& graph() const { return *graph_; }
    std::shared_ptr<const DiGraph> graph_ptr() const { return graph_; }
    const std::vector<double>& edge_prob() const { return edge_prob_; }
    int id() const { return id_; }

    std::uint64_t oracle_calls() const { return draws_.load(std::memory_order_relaxed); }
    void count_draw() const { draws_.fetch_add(1, std::memory_order_relaxed); }

  private:
    std::shared_ptr<const DiGraph> graph_;
    std::vector<double> edge_prob_;
    int id_;
    mutable std::atomic<std::uint64_t> draws_{0};
};

using ICTaskPtr = std::shared_ptr<const ICTask>;

/// Independently assigns each edge a probability drawn uniformly from
/// `choices`. Reproducible from the seed.
ICTaskPtr sample_task(std::shared_ptr<const DiGraph> graph, const std::vector<double>& choices,
                      std::uint64_t seed, int id = 0);

/// Portable description of a task: regenerate from (seed, choices), or pin
/// the probabilities explicitly.
struct TaskSpec {
    std::uint64_t seed = 0;
    std::vector<double> choices;
    std::vector<double> edge_probs;  // empty unless explicit
};

std::string task_spec_to_json(const TaskSpec& spec);
TaskSpec task_spec_from_json(const std::string& text);
ICTaskPtr realize_task(std::shared_ptr<const DiGraph> graph, const TaskSpec& spec, int id = 0);

/// The canonical random object: which edges are live.
struct LiveEdgeDraw {
    BitSet live;  // bit per edge index
};

LiveEdgeDraw sample_live(const ICTask& task, Rng& rng);

/// Full-adoption feedback accumulated over seeded nodes: the activated set
/// plus the revealed status of every edge leaving an activated node (an
/// edge is revealed iff its source is activated).
struct CascadeObservation {
    BitSet activated;     // nodes
    BitSet live_status;   // edges; meaningful only where revealed
    std::vector<int> seeds;

    bool revealed(const DiGraph& g, int edge) const {
        return activated.size() > 0 && activated.test(static_cast<std::size_t>(g.edges[static_cast<std::size_t>(edge)].first));
    }
};

CascadeObservation empty_observation(const DiGraph& graph);

/// Nodes reachable from `seed` through live edges (the seed's cascade).
BitSet cascade_from(const DiGraph& graph, int seed, const LiveEdgeDraw& draw);

/// Seeds one more node and folds its cascade and newly revealed edge
/// statuses into the observation.
void observe_seed(const DiGraph& graph, CascadeObservation& obs, int seed,
                  const LiveEdgeDraw& draw);

/// Throws InconsistentObservation unless the observation is closed under
/// its revealed live edges and every seed is activated.
void validate_observation(const DiGraph& graph, const CascadeObservation& obs);

/// Conditional draw: revealed edges keep their status, unrevealed edges
/// are fresh Bernoullis with their task probabilities.
LiveEdgeDraw sample_live_conditioned(const ICTask& task, const CascadeObservation& obs, Rng& rng);

/// |nodes reachable from the seed set via live edges|, seeds included.
int spread(const DiGraph& graph, const std::vector<int>& seeds, const LiveEdgeDraw& draw);

/// Per-node reachability closure of one draw, by strongly-connected
/// component condensation. `active` restricts the closure to a node subset
/// (rows of inactive nodes stay empty); edges touching inactive nodes are
/// ignored.
std::vector<BitSet> reachability_closure(const DiGraph& graph, const LiveEdgeDraw& draw,
                                         const BitSet* active = nullptr);

}  // namespace submeta::ic
