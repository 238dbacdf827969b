#pragma once

#include <map>
#include <string>
#include <vector>

#include "submeta/core/prior.hpp"
#include "submeta/core/task.hpp"

namespace submeta {

/// Enumeration guard for the exact oracles. Exceeding it is a hard
/// TooLarge error, never a silent truncation.
struct OracleGuard {
    int max_items = 6;
    int max_support = 4096;
    int max_budget = 4;
};

/// Value of the optimal adaptive continuation from partial realization psi
/// with `budget` further selections, by depth-first dynamic programming
/// over (selected set, partial realization) states. Includes the value
/// already banked in dom(psi): budget 0 gives E[f(dom(psi), Phi) | Phi ~ psi].
/// Stopping early is always available (dummy padding), so the value is
/// non-decreasing in budget even for non-monotone tasks.
double optimal_continuation(const Task& task, const Prior& prior, const PartialRealization& psi,
                            int budget, const OracleGuard& guard = {});

/// Optimal two-phase value: the outer max over deterministic initial sets
/// S of size l of the task-average optimal continuation with k-l further
/// selections. Deterministic policies suffice for both stages.
struct OptimalValue {
    double value = 0.0;
    ItemSet initial_set;
    /// (task id, canonical psi encoding) -> best next item (-1 = stop).
    std::map<std::pair<int, std::string>, ItemId> continuation;
};

OptimalValue optimal_two_phase(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                               const OracleGuard& guard = {});

}  // namespace submeta
