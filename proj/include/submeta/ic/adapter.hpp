#pragma once

#include "submeta/core/instance.hpp"
#include "submeta/ic/cascade.hpp"

namespace submeta::ic {

/// Bridges an influence task into the core Task/Prior interface. Items are
/// nodes; the realization is the live-edge draw; the state of node v is a
/// base-3 encoding of the edge statuses its cascade would reveal under
/// full-adoption feedback (0 unrevealed, 1 live, 2 blocked).
///
/// With at most `max_exact_edges` (12) edges the prior is explicit: all
/// 2^|E| draws with product probabilities, which the brute-force checkers
/// can enumerate. Larger graphs get a generative prior whose conditional
/// sampler decodes observations back into revealed edge statuses; the
/// encoding caps usable graphs at 39 edges (base-3 in 64 bits). Beyond
/// that, throws TooLarge — the experiment harness works on the native
/// cascade representation instead and has no such limit.
struct IcInstance {
    Instance instance;   // n = node count, single task
    ICTaskPtr source;
};

inline constexpr int kMaxExactEdges = 12;
inline constexpr int kMaxEncodableEdges = 39;

IcInstance as_task(const ICTaskPtr& task);

}  // namespace submeta::ic
