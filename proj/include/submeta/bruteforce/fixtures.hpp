#pragma once

#include <utility>
#include <vector>

#include "submeta/core/prior.hpp"
#include "submeta/core/task.hpp"

namespace submeta {

/// Two items, two tasks, one deterministic state. Task 0 is identically 0
/// on non-empty sets; task 1 values each singleton at 1 and the pair at 2.
/// The counterexample showing the training-average objective is not
/// adaptive submodular: the task-average marginal of an item at the empty
/// set is 1/2, while its task-1 marginal after observing the other item
/// is 1.
std::pair<std::vector<TaskPtr>, Prior> remark2_instance();

/// Folds task uncertainty into the realization: the composite realization
/// is (task index, base realization) with the task drawn uniformly, and
/// selecting any item reveals the task along with the item's base state.
/// Marginals at the empty partial realization are task averages; once
/// anything is observed they become task-specific — exactly the objective
/// the two-phase training stage faces. Feeding the composite into the
/// submodularity checker exposes the training objective's violations.
std::pair<TaskPtr, Prior> pooled_objective(const std::vector<TaskPtr>& tasks, const Prior& prior);

}  // namespace submeta
