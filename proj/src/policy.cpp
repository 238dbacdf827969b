#include "submeta/core/policy.hpp"

#include <cmath>

#include "submeta/errors.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

FixedSetPolicy::FixedSetPolicy(int n_items, int budget, std::vector<ItemId> items)
    : Policy(n_items, budget), items_(std::move(items)) {
    if (static_cast<int>(items_.size()) > budget)
        throw InfeasibleBudget("fixed selection larger than budget");
}

ChoiceDist FixedSetPolicy::next(const Task&, const PartialRealization& observed) const {
    std::size_t t = observed.size();
    if (t < items_.size()) return {{items_[t], 1.0}};
    // Pad above the reserved dummy pool [n, n + k), which the fixed items
    // themselves may draw from.
    ItemId pad = item_count() + budget() + static_cast<ItemId>(t - items_.size());
    return {{pad, 1.0}};
}

MixturePolicy::MixturePolicy(int n_items, int budget, MixtureBranches branches)
    : Policy(n_items, budget), branches_(std::move(branches)) {
    double total = 0.0;
    for (const auto& [pol, prob] : branches_) {
        if (prob < 0.0) throw Error("negative branch probability");
        if (pol->budget() != budget) throw Error("mixture branches must share one budget");
        total += prob;
    }
    if (std::abs(total - 1.0) > kProbTolerance)
        throw Error("mixture branch probabilities must sum to 1");
}

ChoiceDist MixturePolicy::next(const Task&, const PartialRealization&) const {
    throw Error("mixture policy is executed through its branches");
}

namespace {

// Reserved dummy-id bands (offsets above the ground set). Leaf policies
// draw dummies from [n, n + budget); composite constructs use these bands
// so generated ids never collide inside one trace.
constexpr ItemId kReselectBand = 1 << 20;   // concat: phase-one item selected again
constexpr ItemId kTruncatePadBand = 1 << 21;  // truncation padding, indexed by round

class ConcatPolicy final : public Policy {
  public:
    ConcatPolicy(PolicyPtr first, PolicyPtr second)
        : Policy(first->item_count(), first->budget() + second->budget()),
          first_(std::move(first)),
          second_(std::move(second)) {}

    std::vector<ItemId> initial_selection() const override { return first_->initial_selection(); }

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        int n = item_count();
        int k1 = first_->budget();
        if (static_cast<int>(observed.size()) < k1) return first_->next(task, observed);

        // Rebuild the second policy's private view: undo the level shift
        // applied on the way out, and restore the true state of any
        // re-selected first-phase item from the phase-one record. A
        // re-selection marker for item e belongs to this level exactly when
        // e is not already in the rebuilt view; markers from nested
        // constructs always find e present and pass through opaquely.
        PartialRealization own;
        const auto& entries = observed.entries();
        for (std::size_t i = static_cast<std::size_t>(k1); i < entries.size(); ++i) {
            ItemId id = entries[i].first;
            if (id < n) {
                own.observe(id, entries[i].second);
                continue;
            }
            ItemId v = id - k1;
            if (v >= n + kReselectBand && v < n + kTruncatePadBand) {
                ItemId original = v - n - kReselectBand;
                if (!own.contains(original)) {
                    auto state = observed.state_of(original);
                    own.observe(original, state ? *state : kDummyState);
                    continue;
                }
            }
            own.observe(v, entries[i].second);
        }

        ChoiceDist dist = second_->next(task, own);
        for (auto& choice : dist) {
            if (!is_dummy(choice.item, n) && observed.contains(choice.item) &&
                !own.contains(choice.item)) {
                // Re-selection of a phase-one item: record it under a
                // decodable dummy id; it adds nothing under set semantics.
                choice.item = n + kReselectBand + choice.item;
            }
            if (is_dummy(choice.item, n)) choice.item += k1;  // level shift
        }
        return dist;
    }

  private:
    PolicyPtr first_;
    PolicyPtr second_;
};

class TruncatedPolicy final : public Policy {
  public:
    TruncatedPolicy(PolicyPtr inner, int t)
        : Policy(inner->item_count(), inner->budget()), inner_(std::move(inner)), t_(t) {}

    std::vector<ItemId> initial_selection() const override {
        auto init = inner_->initial_selection();
        if (static_cast<int>(init.size()) > t_) init.resize(static_cast<std::size_t>(t_));
        return init;
    }

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        if (static_cast<int>(observed.size()) < t_) return inner_->next(task, observed);
        ItemId pad = item_count() + kTruncatePadBand + static_cast<ItemId>(observed.size());
        return {{pad, 1.0}};
    }

  private:
    PolicyPtr inner_;
    int t_;
};

MixtureBranches expand(const PolicyPtr& pol) {
    if (const MixtureBranches* branches = pol->mixture()) {
        MixtureBranches out;
        for (const auto& [child, prob] : *branches)
            for (const auto& [leaf, leaf_prob] : expand(child)) out.emplace_back(leaf, prob * leaf_prob);
        return out;
    }
    return {{pol, 1.0}};
}

}  // namespace

PolicyPtr concat(PolicyPtr pi, PolicyPtr pi_prime) {
    // Pre-expand mixtures so leaf policies stay the only executable kind.
    auto a = expand(pi);
    auto b = expand(pi_prime);
    if (a.size() == 1 && b.size() == 1)
        return std::make_shared<ConcatPolicy>(a[0].first, b[0].first);
    MixtureBranches branches;
    for (const auto& [pa, wa] : a)
        for (const auto& [pb, wb] : b)
            branches.emplace_back(std::make_shared<ConcatPolicy>(pa, pb), wa * wb);
    return std::make_shared<MixturePolicy>(pi->item_count(), pi->budget() + pi_prime->budget(),
                                           std::move(branches));
}

PolicyPtr truncate(PolicyPtr pi, int t) {
    if (t < 0 || t > pi->budget()) throw InfeasibleBudget("truncation level outside [0, budget]");
    auto leaves = expand(pi);
    if (leaves.size() == 1) return std::make_shared<TruncatedPolicy>(leaves[0].first, t);
    MixtureBranches branches;
    for (const auto& [leaf, prob] : leaves)
        branches.emplace_back(std::make_shared<TruncatedPolicy>(leaf, t), prob);
    return std::make_shared<MixturePolicy>(pi->item_count(), pi->budget(), std::move(branches));
}

namespace {

const Policy& sample_leaf(const Policy& pi, Rng& rng) {
    const MixtureBranches* branches = pi.mixture();
    if (!branches) return pi;
    double u = rng.next_double();
    double acc = 0.0;
    for (const auto& [child, prob] : *branches) {
        acc += prob;
        if (u < acc) return sample_leaf(*child, rng);
    }
    return sample_leaf(*branches->back().first, rng);
}

ItemId sample_choice(const ChoiceDist& dist, Rng& rng) {
    if (dist.empty()) throw Error("empty choice distribution");
    if (dist.size() == 1) return dist[0].item;
    double u = rng.next_double();
    double acc = 0.0;
    for (const auto& choice : dist) {
        acc += choice.prob;
        if (u < acc) return choice.item;
    }
    return dist.back().item;
}

}  // namespace

Trace run_policy(const Policy& pi, const Task& task, const Realization& phi, std::uint64_t seed) {
    Rng rng(derive_seed({seed, 0x706f6c696379ULL}));
    const Policy& leaf = sample_leaf(pi, rng);

    Trace trace;
    trace.task_id = task.id();
    trace.seed = seed;
    for (int t = 0; t < leaf.budget(); ++t) {
        ChoiceDist dist = leaf.next(task, trace.observed);
        ItemId item = sample_choice(dist, rng);
        if (trace.observed.contains(item))
            throw BudgetExceeded("policy re-selected item " + std::to_string(item));
        trace.observed.observe(item, phi.state_of(item));
    }
    return trace;
}

}  // namespace submeta
