#pragma once

#include <cstdint>
#include <numbers>

#include "submeta/core/policy.hpp"
#include "submeta/estimation/marginals.hpp"

namespace submeta {

/// Branch weights of the k-l = 1 mixture policy. The defaults weight the
/// non-adaptive branch by e/(1+e) and the best-singleton branch by
/// 1/(1+e), which is the assignment the approximation bound needs.
struct PiAWeights {
    double fixed_branch = std::numbers::e / (1.0 + std::numbers::e);

    double singleton_branch() const { return 1.0 - fixed_branch; }
};

/// k-l = 1 regime: mixture of a non-adaptive random-greedy set of size
/// k-1 (dummy-completed at test time) and the per-task best singleton.
/// Samples the trained set once with `seed`. Throws WrongRegime unless
/// l = k-1.
PolicyPtr pi_a(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
               std::uint64_t seed, PiAWeights weights = {});

/// Exact law of pi_a: the trained-set randomness is expanded into mixture
/// branches so exact evaluators integrate over it. Used by the bound
/// verifiers.
PolicyPtr pi_a_exact(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                     PiAWeights weights = {});

/// l = 1 regime: empty initial set; uniform mixture of k-1 rounds of
/// adaptive random greedy (top-(k-1) sets over E') and the per-task best
/// singleton. Throws WrongRegime unless l = 1 and k >= 2.
PolicyPtr pi_b(const Prior& prior, int n_items, int l, int k, EstimatorConfig config = {});

}  // namespace submeta
