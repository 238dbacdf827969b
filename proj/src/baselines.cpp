#include "submeta/policies/baselines.hpp"

#include "submeta/errors.hpp"
#include "submeta/policies/selection.hpp"
#include "submeta/policies/two_phase.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

namespace {

class RmgPolicy final : public Policy {
  public:
    RmgPolicy(int n_items, int budget, std::vector<ItemId> initial, Prior prior)
        : Policy(n_items, budget), initial_(std::move(initial)), prior_(std::move(prior)) {}

    std::vector<ItemId> initial_selection() const override { return initial_; }

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        std::size_t t = observed.size();
        if (t < initial_.size()) return {{initial_[t], 1.0}};
        // Non-adaptive completion: greedy on f^i under the unconditioned
        // prior. Observed states are deliberately ignored.
        std::vector<ItemId> candidates = extended_items_not_in(item_count(), budget(), observed);
        ItemSet selected = observed.real_domain(item_count());
        double base = expected_set_utility(task, prior_, selected);
        std::vector<double> marginals(candidates.size(), 0.0);
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (is_dummy(candidates[i], item_count())) continue;
            marginals[i] =
                expected_set_utility(task, prior_, set_with(selected, candidates[i])) - base;
        }
        return {{argmax_item(candidates, marginals, item_count()), 1.0}};
    }

  private:
    std::vector<ItemId> initial_;
    Prior prior_;
};

class AdaptiveRandomGreedyPolicy final : public Policy {
  public:
    AdaptiveRandomGreedyPolicy(int n_items, int budget, int active_rounds, int u_size, Prior prior,
                               EstimatorConfig config)
        : Policy(n_items, budget),
          active_rounds_(active_rounds),
          u_size_(u_size),
          prior_(std::move(prior)),
          config_(config) {
        if (active_rounds > budget) throw InfeasibleBudget("active rounds exceed budget");
        if (u_size < 1) throw Error("top-set size must be positive");
    }

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        std::size_t t = observed.size();
        if (static_cast<int>(t) >= active_rounds_) {
            for (ItemId d = item_count(); d < item_count() + budget(); ++d)
                if (!observed.contains(d)) return {{d, 1.0}};
            throw BudgetExceeded("dummy pool exhausted");
        }
        std::vector<ItemId> candidates = extended_items_not_in(item_count(), budget(), observed);
        std::vector<double> marginals = conditional_marginals(
            task, prior_, observed, candidates, item_count(), config_, psi_fingerprint(observed));
        std::vector<ItemId> u = top_nonnegative_items(candidates, marginals, item_count(),
                                                      static_cast<std::size_t>(u_size_));
        ChoiceDist dist;
        dist.reserve(u.size());
        double p = 1.0 / static_cast<double>(u.size());
        for (ItemId e : u) dist.push_back({e, p});
        return dist;
    }

  private:
    int active_rounds_;
    int u_size_;
    Prior prior_;
    EstimatorConfig config_;
};

class BestSingletonPolicy final : public Policy {
  public:
    BestSingletonPolicy(int n_items, int budget, Prior prior)
        : Policy(n_items, budget), prior_(std::move(prior)) {}

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        std::size_t t = observed.size();
        if (t > 0) return {{item_count() + static_cast<ItemId>(t), 1.0}};
        // e(i) = argmax over E' of f^i({e}); the dummy candidate stands in
        // for "select nothing useful" and scores f^i(empty).
        std::vector<ItemId> candidates;
        std::vector<double> values;
        for (ItemId e = 0; e < item_count(); ++e) {
            candidates.push_back(e);
            values.push_back(expected_set_utility(task, prior_, {e}));
        }
        candidates.push_back(item_count());
        values.push_back(expected_set_utility(task, prior_, {}));
        return {{argmax_item(candidates, values, item_count()), 1.0}};
    }

  private:
    Prior prior_;
};

}  // namespace

PolicyPtr baseline_gt(const std::vector<TaskPtr>& tasks, const Prior& prior, int k) {
    auto chain = tgp_train(tasks, prior, k);
    int n = prior.support().front().realization.item_count();
    return std::make_shared<FixedSetPolicy>(n, k, std::move(chain));
}

PolicyPtr baseline_rmg(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                       std::uint64_t seed, EstimatorConfig) {
    if (l < 0 || l > k) throw InfeasibleBudget("RMG needs 0 <= l <= k");
    auto initial = random_greedy_init(tasks, prior, l, std::max(l, 1), k, seed);
    int n = prior.support().front().realization.item_count();
    return std::make_shared<RmgPolicy>(n, k, std::move(initial), prior);
}

PolicyPtr baseline_fully_adaptive(const Prior& prior, int n_items, int k, bool monotone,
                                  EstimatorConfig config) {
    if (monotone) return tgp_policy({}, n_items, k, prior, config);
    return adaptive_random_greedy(n_items, k, k, k, prior, config);
}

PolicyPtr baseline_random(int n_items, int k, std::uint64_t seed) {
    Rng rng(derive_seed({seed, 0x72616e64ULL}));
    std::vector<ItemId> pool(static_cast<std::size_t>(n_items));
    for (int i = 0; i < n_items; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<ItemId> picks;
    for (int round = 0; round < k && !pool.empty(); ++round) {
        std::size_t j = rng.below(pool.size());
        picks.push_back(pool[j]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return std::make_shared<FixedSetPolicy>(n_items, k, std::move(picks));
}

PolicyPtr adaptive_random_greedy(int n_items, int budget, int active_rounds, int u_size,
                                 Prior prior, EstimatorConfig config) {
    return std::make_shared<AdaptiveRandomGreedyPolicy>(n_items, budget, active_rounds, u_size,
                                                        std::move(prior), config);
}

PolicyPtr best_singleton_policy(int n_items, int budget, Prior prior) {
    return std::make_shared<BestSingletonPolicy>(n_items, budget, std::move(prior));
}

}  // namespace submeta
