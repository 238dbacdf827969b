#pragma once

#include <cstdint>
#include <vector>

#include "submeta/core/evaluate.hpp"
#include "submeta/core/policy.hpp"

namespace submeta {

/// Mean with uncertainty; exact paths carry stderr 0.
struct MarginalEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long samples_used = 0;
};

/// How adaptive rules evaluate conditional marginals.
struct EstimatorConfig {
    enum class Mode { automatic, exact, monte_carlo };

    Mode mode = Mode::automatic;
    long mc_samples = 1000;
    /// `automatic` uses exact enumeration while the conditional support has
    /// at most this many realizations, Monte Carlo beyond.
    int max_exact_support = 20;
    std::uint64_t seed = 0;
};

/// Delta_i(e | psi): conditional expected marginal utility of an item,
/// by enumeration over the conditioned prior. Dummy items are exactly 0.
MarginalEstimate marginal_item_exact(const Task& task, const Prior& prior,
                                     const PartialRealization& psi, ItemId e);

/// Sampled Delta_i(e | psi) over n_samples conditional draws;
/// stderr = sample standard deviation / sqrt(n_samples).
MarginalEstimate marginal_item_mc(const Task& task, const Prior& prior,
                                  const PartialRealization& psi, ItemId e, long n_samples,
                                  std::uint64_t seed);

/// f^i(Y) = E_Phi f^i(Y, Phi) under the unconditioned prior (exact).
double expected_set_utility(const Task& task, const Prior& prior, const ItemSet& items);

/// Training surrogate: (1/m) sum_i (f^i(S u {e}) - f^i(S)). Exact path;
/// throws EmptyTaskSet / NotEnumerable as applicable. Dummy e gives 0.
double marginal_set_avg(const std::vector<TaskPtr>& tasks, const Prior& prior, const ItemSet& set,
                        ItemId e);

/// Monte Carlo variant of the training surrogate for generative priors.
MarginalEstimate marginal_set_avg_mc(const std::vector<TaskPtr>& tasks, const Prior& prior,
                                     const ItemSet& set, ItemId e, long n_samples,
                                     std::uint64_t seed);

/// Delta_i(pi | Y): conditional expected marginal utility of a policy on
/// top of a fixed set, over the prior and all policy branches (exact).
MarginalEstimate marginal_policy(const Task& task, const Prior& prior, const ItemSet& y,
                                 const Policy& pi);

/// Conditional marginals of every candidate in one round. The Monte Carlo
/// path draws one pool of conditioned realizations and scores every
/// candidate against it (common random numbers), which stabilizes argmax
/// and top-set selection. round_salt folds the round identity into the
/// sample stream.
std::vector<double> conditional_marginals(const Task& task, const Prior& prior,
                                          const PartialRealization& psi,
                                          const std::vector<ItemId>& candidates, int n_items,
                                          const EstimatorConfig& config, std::uint64_t round_salt);

}  // namespace submeta
