#pragma once

#include <functional>
#include <vector>

#include "submeta/core/policy.hpp"

namespace submeta {

/// Exact expected utility of a policy under an explicit prior: sums over
/// every (realization, policy-branch) pair weighted by its joint
/// probability. Throws NotEnumerable for generative priors.
double expected_utility_exact(const Policy& pi, const Task& task, const Prior& prior);

/// Generic exact walk: accumulates leaf_value(selected_real_items, phi)
/// over all (realization, branch) pairs. The building block behind
/// expected_utility_exact and the policy-marginal oracle.
double exact_policy_expectation(
    const Policy& pi, const Task& task, const Prior& prior,
    const std::function<double(const ItemSet&, const Realization&)>& leaf_value);

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long samples_used = 0;
};

struct FAvgOptions {
    long mc_runs = 1000;          // policy executions per task (generative priors)
    std::uint64_t seed = 0;
};

/// Sample-average objective over a task list: (1/m) sum_i f^i_avg(pi).
/// Exact for explicit priors (stderr 0); Monte Carlo with reported
/// standard error for generative ones. Throws EmptyTaskSet.
Estimate f_avg(const Policy& pi, const std::vector<TaskPtr>& tasks, const Prior& prior,
               const FAvgOptions& options = {});

}  // namespace submeta
