#include "submeta/bruteforce/fixtures.hpp"

#include <map>

#include "submeta/errors.hpp"

namespace submeta {

std::pair<std::vector<TaskPtr>, Prior> remark2_instance() {
    std::vector<std::vector<StateValue>> support_states = {{0, 0}};
    Prior prior = Prior::explicit_prior({{Realization{{0, 0}, 0}, 1.0}});

    // f^1 == 0 everywhere.
    std::map<std::pair<ItemSet, int>, double> zero_table;
    // f^2: singletons 1, pair 2.
    std::map<std::pair<ItemSet, int>, double> pair_table{
        {{ItemSet{0}, 0}, 1.0}, {{ItemSet{1}, 0}, 1.0}, {{ItemSet{0, 1}, 0}, 2.0}};

    std::vector<TaskPtr> tasks = {
        std::make_shared<TableTask>(0, true, true, support_states, std::move(zero_table)),
        std::make_shared<TableTask>(1, true, true, support_states, std::move(pair_table))};
    return {std::move(tasks), std::move(prior)};
}

std::pair<TaskPtr, Prior> pooled_objective(const std::vector<TaskPtr>& tasks, const Prior& prior) {
    if (tasks.empty()) throw EmptyTaskSet("pooled objective needs at least one task");
    const auto& base_support = prior.support();
    int n = base_support.front().realization.item_count();
    auto m = static_cast<StateValue>(tasks.size());

    // Composite state of item e under (task t, base phi): phi(e) * m + t.
    std::vector<WeightedRealization> support;
    support.reserve(base_support.size() * tasks.size());
    for (std::size_t b = 0; b < base_support.size(); ++b) {
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            Realization composite;
            composite.index = static_cast<int>(b * tasks.size() + t);
            composite.states.reserve(static_cast<std::size_t>(n));
            for (StateValue s : base_support[b].realization.states)
                composite.states.push_back(s * m + static_cast<StateValue>(t));
            support.push_back({std::move(composite), base_support[b].prob / static_cast<double>(m)});
        }
    }

    bool monotone = true;
    for (const auto& task : tasks) monotone = monotone && task->is_adaptive_monotone();

    auto task_list = tasks;  // shared ownership for the callback
    auto utility = [task_list, m](const ItemSet& items, const Realization& phi) {
        auto t = static_cast<std::size_t>(phi.states.front() % m);
        Realization base;
        base.states.reserve(phi.states.size());
        for (StateValue s : phi.states) base.states.push_back(s / m);
        return task_list[t]->utility(items, base);
    };

    TaskPtr composite = std::make_shared<CallbackTask>(-1, monotone, false, std::move(utility));
    return {std::move(composite), Prior::explicit_prior(std::move(support))};
}

}  // namespace submeta
