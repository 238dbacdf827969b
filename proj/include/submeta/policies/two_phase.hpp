#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "submeta/core/policy.hpp"
#include "submeta/estimation/marginals.hpp"

namespace submeta {

/// Greedy initialization: l rounds of argmax over real items of the
/// task-average marginal (1/m) sum_i (f^i(S u {e}) - f^i(S)); ties to
/// lowest id. Returned in selection order. Throws InfeasibleBudget when
/// l exceeds the ground set.
std::vector<ItemId> tgp_train(const std::vector<TaskPtr>& tasks, const Prior& prior, int l);

/// Two-phase greedy policy: rounds 1..l select the trained set in order,
/// the remaining rounds pick the conditional-marginal argmax over real
/// items outside the current domain.
PolicyPtr tgp_policy(std::vector<ItemId> initial, int n_items, int budget, Prior prior,
                     EstimatorConfig config = {});

/// Random-greedy initialization over E' = E u D (k dummies): each of the
/// `rounds` rounds samples uniformly from the top-`u_size` candidates by
/// task-average marginal. Returns the sampled set in selection order.
std::vector<ItemId> random_greedy_init(const std::vector<TaskPtr>& tasks, const Prior& prior,
                                       int rounds, int u_size, int n_dummies, std::uint64_t seed);

/// Exact law of random_greedy_init: every reachable final set with its
/// probability (branches merged by set). Used by the exact verifiers.
std::vector<std::pair<ItemSet, double>> random_greedy_init_distribution(
    const std::vector<TaskPtr>& tasks, const Prior& prior, int rounds, int u_size, int n_dummies);

/// Algorithm-2 initialization (u_size = rounds = l, dummies = k).
std::vector<ItemId> trgp_train(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                               std::uint64_t seed);

/// Two-phase randomized greedy: rounds 1..l select the initial set, each
/// remaining round samples uniformly from the top-(k-l) items of
/// E' \ selected by conditional marginal.
PolicyPtr trgp_policy(std::vector<ItemId> initial, int n_items, int budget, Prior prior,
                      EstimatorConfig config = {});

/// Serialized form of a trained initial set.
struct TrainedInit {
    std::string algorithm;
    int l = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<ItemId> initial_set;
};

std::string trained_init_to_json(const TrainedInit& init);
TrainedInit trained_init_from_json(const std::string& text);

}  // namespace submeta
