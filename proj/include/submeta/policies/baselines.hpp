#pragma once

#include <cstdint>

#include "submeta/core/policy.hpp"
#include "submeta/estimation/marginals.hpp"

namespace submeta {

/// Greedy Train: all k items chosen greedily at training time, executed
/// non-adaptively. Identical to the two-phase greedy with l = k.
PolicyPtr baseline_gt(const std::vector<TaskPtr>& tasks, const Prior& prior, int k);

/// Randomized Meta-Greedy: random-greedy initial set of size l on the
/// task-average surrogate, completed per task by non-adaptive greedy on
/// f^i. Never reads state observations.
PolicyPtr baseline_rmg(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                       std::uint64_t seed, EstimatorConfig config = {});

/// Fully adaptive baselines (l = 0): per-round conditional-marginal argmax
/// for the monotone case, uniform sampling from the top-k marginal set
/// over E' for the non-monotone case.
PolicyPtr baseline_fully_adaptive(const Prior& prior, int n_items, int k, bool monotone,
                                  EstimatorConfig config = {});

/// k distinct real items drawn uniformly at construction, non-adaptive.
PolicyPtr baseline_random(int n_items, int k, std::uint64_t seed);

/// Adaptive random greedy: `active_rounds` rounds of uniform sampling from
/// the top-`u_size` conditional-marginal items of E' \ selected, dummy
/// padding afterwards. Building block for the non-monotone baselines and
/// the l = 1 regime policy.
PolicyPtr adaptive_random_greedy(int n_items, int budget, int active_rounds, int u_size,
                                 Prior prior, EstimatorConfig config = {});

/// Test-time best singleton: selects argmax_{e in E'} f^i({e}) for the
/// incoming task, then pads with dummies.
PolicyPtr best_singleton_policy(int n_items, int budget, Prior prior);

}  // namespace submeta
