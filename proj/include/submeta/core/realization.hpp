#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "submeta/core/items.hpp"
#include "submeta/errors.hpp"

namespace submeta {

/// Total assignment of one state to every real item (the phi objects).
/// `index` is the position inside an explicit prior's support (-1 when the
/// realization was produced by a sampler); table-backed utilities use it
/// to resolve lookups without scanning.
struct Realization {
    std::vector<StateValue> states;
    int index = -1;

    int item_count() const { return static_cast<int>(states.size()); }

    StateValue state_of(ItemId e) const {
        return is_dummy(e, item_count()) ? kDummyState : states[static_cast<std::size_t>(e)];
    }

    bool same_states(const Realization& o) const { return states == o.states; }
};

/// Observed item -> state pairs accumulated during policy execution (the
/// psi objects). Insertion order is retained; each item appears at most
/// once. May contain dummy items.
class PartialRealization {
  public:
    PartialRealization() = default;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const std::vector<std::pair<ItemId, StateValue>>& entries() const { return entries_; }

    bool contains(ItemId e) const {
        for (const auto& [item, state] : entries_)
            if (item == e) return true;
        return false;
    }

    std::optional<StateValue> state_of(ItemId e) const {
        for (const auto& [item, state] : entries_)
            if (item == e) return state;
        return std::nullopt;
    }

    void observe(ItemId e, StateValue s) {
        if (contains(e)) throw BudgetExceeded("item observed twice in partial realization");
        entries_.emplace_back(e, s);
    }

    void pop_back() { entries_.pop_back(); }

    /// Items in selection order (dummies included).
    ItemSet domain_set() const {
        ItemSet out;
        out.reserve(entries_.size());
        for (const auto& [item, state] : entries_) out.push_back(item);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Sorted real items of the domain; this is what utilities see.
    ItemSet real_domain(int n_items) const { return strip_dummies(domain_set(), n_items); }

    /// Entries sorted by item id. Two partial realizations with the same
    /// canonical form are interchangeable for every evaluator here (set
    /// semantics), so this doubles as a memoization key.
    std::vector<std::pair<ItemId, StateValue>> canonical() const {
        auto out = entries_;
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    std::vector<std::pair<ItemId, StateValue>> entries_;
};

/// psi subseteq psi': domain containment with agreement on the overlap.
inline bool is_subrealization(const PartialRealization& psi, const PartialRealization& psi_prime) {
    for (const auto& [item, state] : psi.entries()) {
        auto other = psi_prime.state_of(item);
        if (!other || *other != state) return false;
    }
    return true;
}

/// phi ~ psi: the realization agrees with psi everywhere on dom(psi).
/// Dummy entries are consistent iff they carry the fixed dummy state.
inline bool is_consistent(const PartialRealization& psi, const Realization& phi) {
    for (const auto& [item, state] : psi.entries()) {
        if (is_dummy(item, phi.item_count())) {
            if (state != kDummyState) return false;
        } else if (phi.states[static_cast<std::size_t>(item)] != state) {
            return false;
        }
    }
    return true;
}

}  // namespace submeta
