#include "submeta/policies/boundary.hpp"

#include "submeta/errors.hpp"
#include "submeta/policies/baselines.hpp"
#include "submeta/policies/two_phase.hpp"

namespace submeta {

namespace {

void check_pi_a_regime(int l, int k) {
    if (k < 1 || l != k - 1) throw WrongRegime("pi_a applies only when l = k - 1");
}

int items_from_prior(const Prior& prior) {
    return prior.support().front().realization.item_count();
}

}  // namespace

PolicyPtr pi_a(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
               std::uint64_t seed, PiAWeights weights) {
    check_pi_a_regime(l, k);
    int n = items_from_prior(prior);
    auto trained = random_greedy_init(tasks, prior, k - 1, k - 1, k, seed);
    MixtureBranches branches;
    branches.emplace_back(std::make_shared<FixedSetPolicy>(n, k, std::move(trained)),
                          weights.fixed_branch);
    branches.emplace_back(best_singleton_policy(n, k, prior), weights.singleton_branch());
    return std::make_shared<MixturePolicy>(n, k, std::move(branches));
}

PolicyPtr pi_a_exact(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                     PiAWeights weights) {
    check_pi_a_regime(l, k);
    int n = items_from_prior(prior);
    MixtureBranches branches;
    for (const auto& [set, prob] : random_greedy_init_distribution(tasks, prior, k - 1, k - 1, k)) {
        std::vector<ItemId> ordered(set.begin(), set.end());
        branches.emplace_back(std::make_shared<FixedSetPolicy>(n, k, std::move(ordered)),
                              weights.fixed_branch * prob);
    }
    branches.emplace_back(best_singleton_policy(n, k, prior), weights.singleton_branch());
    return std::make_shared<MixturePolicy>(n, k, std::move(branches));
}

PolicyPtr pi_b(const Prior& prior, int n_items, int l, int k, EstimatorConfig config) {
    if (l != 1) throw WrongRegime("pi_b applies only when l = 1");
    if (k < 2) throw WrongRegime("pi_b needs k >= 2");
    MixtureBranches branches;
    branches.emplace_back(adaptive_random_greedy(n_items, k, k - 1, k - 1, prior, config), 0.5);
    branches.emplace_back(best_singleton_policy(n_items, k, prior), 0.5);
    return std::make_shared<MixturePolicy>(n_items, k, std::move(branches));
}

}  // namespace submeta
