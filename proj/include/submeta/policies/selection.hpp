#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "submeta/core/items.hpp"
#include "submeta/core/realization.hpp"

namespace submeta {

/// Candidate order for greedy selection: larger marginal first; on ties,
/// real items before dummies (so real zeros are preferred), then lowest id.
inline std::vector<std::size_t> rank_candidates(const std::vector<ItemId>& candidates,
                                                const std::vector<double>& marginals, int n_items) {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (marginals[a] != marginals[b]) return marginals[a] > marginals[b];
        bool da = is_dummy(candidates[a], n_items);
        bool db = is_dummy(candidates[b], n_items);
        if (da != db) return db;
        return candidates[a] < candidates[b];
    });
    return order;
}

/// Top-`count` candidates under the ranking above (the U-sets of the
/// randomized policies). Returns fewer only when candidates run out.
inline std::vector<ItemId> top_items(const std::vector<ItemId>& candidates,
                                     const std::vector<double>& marginals, int n_items,
                                     std::size_t count) {
    auto order = rank_candidates(candidates, marginals, n_items);
    std::vector<ItemId> out;
    out.reserve(std::min(count, order.size()));
    for (std::size_t i = 0; i < order.size() && out.size() < count; ++i)
        out.push_back(candidates[order[i]]);
    return out;
}

/// Argmax item, ties resolved like the ranking above.
inline ItemId argmax_item(const std::vector<ItemId>& candidates,
                          const std::vector<double>& marginals, int n_items) {
    return candidates[rank_candidates(candidates, marginals, n_items).front()];
}

/// The maximizer of sum_{e in V} Delta(e) over V with |V| <= count: the
/// top candidates with negative-marginal items dropped. Because the dummy
/// pool outlasts the budget, the result always holds at least one item.
inline std::vector<ItemId> top_nonnegative_items(const std::vector<ItemId>& candidates,
                                                 const std::vector<double>& marginals, int n_items,
                                                 std::size_t count) {
    std::vector<ItemId> kept_items;
    std::vector<double> kept_marginals;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (marginals[i] < 0.0) continue;
        kept_items.push_back(candidates[i]);
        kept_marginals.push_back(marginals[i]);
    }
    if (kept_items.empty()) return top_items(candidates, marginals, n_items, count);
    return top_items(kept_items, kept_marginals, n_items, count);
}

/// Stable 64-bit key of a partial realization's content (order-free);
/// salts per-round Monte Carlo streams so replays are bit-identical.
inline std::uint64_t psi_fingerprint(const PartialRealization& psi) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& [item, state] : psi.canonical()) {
        h ^= static_cast<std::uint64_t>(item) * 0xff51afd7ed558ccdULL;
        h = (h << 27) | (h >> 37);
        h ^= static_cast<std::uint64_t>(state) * 0xc4ceb9fe1a85ec53ULL;
        h *= 0x2545f4914f6cdd1dULL;
    }
    return h;
}

/// Uniform distribution over a candidate set.
inline std::vector<ItemId> real_items_not_in(int n_items, const PartialRealization& observed) {
    std::vector<ItemId> out;
    out.reserve(static_cast<std::size_t>(n_items));
    for (ItemId e = 0; e < n_items; ++e)
        if (!observed.contains(e)) out.push_back(e);
    return out;
}

/// E' \ dom(observed): all real items plus the k reserved dummies.
inline std::vector<ItemId> extended_items_not_in(int n_items, int n_dummies,
                                                 const PartialRealization& observed) {
    std::vector<ItemId> out;
    out.reserve(static_cast<std::size_t>(n_items + n_dummies));
    for (ItemId e = 0; e < n_items + n_dummies; ++e)
        if (!observed.contains(e)) out.push_back(e);
    return out;
}

}  // namespace submeta
