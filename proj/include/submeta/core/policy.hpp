#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "submeta/core/prior.hpp"
#include "submeta/core/task.hpp"

namespace submeta {

/// One round's selection distribution. Deterministic rules return a single
/// entry with probability 1; randomized rules return the uniform law over
/// their candidate set. Probabilities sum to 1.
struct WeightedItem {
    ItemId item;
    double prob;
};
using ChoiceDist = std::vector<WeightedItem>;

class Policy;
using PolicyPtr = std::shared_ptr<const Policy>;
using MixtureBranches = std::vector<std::pair<PolicyPtr, double>>;

/// A two-phase decision rule: a fixed initial set of size l followed by an
/// adaptive (possibly randomized) completion, selecting `budget()` items in
/// total (dummies permitted). `next` must be a deterministic, order-
/// insensitive function of the observed prefix so exact evaluators can
/// enumerate branches; randomness lives in the returned distribution.
class Policy {
  public:
    Policy(int n_items, int budget) : n_items_(n_items), budget_(budget) {}
    virtual ~Policy() = default;

    int item_count() const { return n_items_; }
    int budget() const { return budget_; }

    /// The task-independent first-phase selections, in selection order.
    virtual std::vector<ItemId> initial_selection() const { return {}; }

    /// Distribution of the next selection given the policy's own observed
    /// prefix. Called only while observed.size() < budget().
    virtual ChoiceDist next(const Task& task, const PartialRealization& observed) const = 0;

    /// Non-null for policies that first draw one of several sub-policies.
    virtual const MixtureBranches* mixture() const { return nullptr; }

  private:
    int n_items_;
    int budget_;
};

/// Ordered fixed selections padded with dummy items up to the budget.
class FixedSetPolicy final : public Policy {
  public:
    FixedSetPolicy(int n_items, int budget, std::vector<ItemId> items);

    std::vector<ItemId> initial_selection() const override { return items_; }
    ChoiceDist next(const Task& task, const PartialRealization& observed) const override;

  private:
    std::vector<ItemId> items_;
};

/// Draws one branch policy at the start of every execution.
class MixturePolicy final : public Policy {
  public:
    MixturePolicy(int n_items, int budget, MixtureBranches branches);

    ChoiceDist next(const Task&, const PartialRealization&) const override;
    const MixtureBranches* mixture() const override { return &branches_; }

  private:
    MixtureBranches branches_;
};

/// Runs pi, then pi_prime from a fresh observation state (pi_prime never
/// sees pi's observations). Selected sets merge under set semantics.
PolicyPtr concat(PolicyPtr pi, PolicyPtr pi_prime);

/// Level-t truncation: identical selections for the first t rounds, dummy
/// padding afterwards so budget accounting is unchanged.
PolicyPtr truncate(PolicyPtr pi, int t);

/// Ordered record of one policy execution.
struct Trace {
    PartialRealization observed;
    int task_id = -1;
    std::uint64_t seed = 0;

    std::vector<ItemId> items() const {
        std::vector<ItemId> out;
        for (const auto& [item, state] : observed.entries()) out.push_back(item);
        return out;
    }
};

/// Executes pi on realization phi. Pure function of (pi, task, phi, seed):
/// replays are bit-identical. Throws BudgetExceeded if the rule re-selects
/// a real item.
Trace run_policy(const Policy& pi, const Task& task, const Realization& phi, std::uint64_t seed);

}  // namespace submeta
