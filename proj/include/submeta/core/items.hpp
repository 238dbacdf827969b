#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace submeta {

/// Ground-set item index. Indices 0..n-1 are real items; any index >= n
/// denotes a dummy item (zero marginal gain in every context, single
/// fixed state). Dummy items pad budgets in randomized policies.
using ItemId = std::int32_t;

/// Element of the finite per-item state space, encoded as an integer.
/// Derived state encodings (e.g. cascade observations) may be large, so
/// 64 bits are used throughout.
using StateValue = std::int64_t;

inline constexpr StateValue kDummyState = 0;

inline bool is_dummy(ItemId item, int n_items) { return item >= n_items; }

/// Sorted, duplicate-free item set.
using ItemSet = std::vector<ItemId>;

inline bool set_contains(const ItemSet& s, ItemId e) {
    return std::binary_search(s.begin(), s.end(), e);
}

inline ItemSet set_with(const ItemSet& s, ItemId e) {
    ItemSet out = s;
    auto it = std::lower_bound(out.begin(), out.end(), e);
    if (it == out.end() || *it != e) out.insert(it, e);
    return out;
}

inline ItemSet set_union_of(const ItemSet& a, const ItemSet& b) {
    ItemSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline ItemSet make_set(std::vector<ItemId> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

inline ItemSet strip_dummies(const ItemSet& s, int n_items) {
    ItemSet out;
    out.reserve(s.size());
    for (ItemId e : s)
        if (!is_dummy(e, n_items)) out.push_back(e);
    return out;
}

}  // namespace submeta
