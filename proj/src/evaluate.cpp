#include "submeta/core/evaluate.hpp"

#include <cmath>
#include <map>

#include "submeta/errors.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

namespace {

using CanonicalKey = std::vector<std::pair<ItemId, StateValue>>;

struct BranchWalker {
    const Policy& policy;
    const Task& task;
    const std::function<double(const ItemSet&, const Realization&)>& leaf_value;
    // next() is a deterministic, order-insensitive function of the observed
    // prefix, so choice distributions are shared across realizations.
    std::map<CanonicalKey, ChoiceDist> choice_memo;

    double walk(const Realization& phi, PartialRealization& view, int t) {
        if (t == policy.budget()) {
            ItemSet selected = view.real_domain(phi.item_count());
            return leaf_value(selected, phi);
        }
        auto [it, inserted] = choice_memo.try_emplace(view.canonical());
        if (inserted) it->second = policy.next(task, view);
        ChoiceDist dist = it->second;  // copy: the memo may rehash during recursion

        double value = 0.0;
        for (const auto& [item, prob] : dist) {
            if (prob <= 0.0) continue;
            if (view.contains(item))
                throw BudgetExceeded("policy re-selected item " + std::to_string(item));
            view.observe(item, phi.state_of(item));
            value += prob * walk(phi, view, t + 1);
            view.pop_back();
        }
        return value;
    }
};

}  // namespace

double exact_policy_expectation(
    const Policy& pi, const Task& task, const Prior& prior,
    const std::function<double(const ItemSet&, const Realization&)>& leaf_value) {
    if (!prior.is_explicit())
        throw NotEnumerable("exact policy evaluation requires an explicit prior");

    if (const MixtureBranches* branches = pi.mixture()) {
        double value = 0.0;
        for (const auto& [child, prob] : *branches)
            if (prob > 0.0) value += prob * exact_policy_expectation(*child, task, prior, leaf_value);
        return value;
    }

    BranchWalker walker{pi, task, leaf_value, {}};
    double value = 0.0;
    for (const auto& [phi, prob] : prior.support()) {
        if (prob <= 0.0) continue;
        PartialRealization view;
        value += prob * walker.walk(phi, view, 0);
    }
    return value;
}

double expected_utility_exact(const Policy& pi, const Task& task, const Prior& prior) {
    return exact_policy_expectation(
        pi, task, prior,
        [&task](const ItemSet& selected, const Realization& phi) {
            return task.utility(selected, phi);
        });
}

Estimate f_avg(const Policy& pi, const std::vector<TaskPtr>& tasks, const Prior& prior,
               const FAvgOptions& options) {
    if (tasks.empty()) throw EmptyTaskSet("f_avg needs at least one task");

    if (prior.is_explicit()) {
        double total = 0.0;
        for (const auto& task : tasks) total += expected_utility_exact(pi, *task, prior);
        return {total / static_cast<double>(tasks.size()), 0.0, 0};
    }

    // Monte Carlo: fresh realization and policy seed per run, averaged over
    // tasks first so runs are i.i.d. samples of the objective.
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long run = 0; run < options.mc_runs; ++run) {
        double run_value = 0.0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            std::uint64_t run_seed =
                derive_seed({options.seed, 0xfa56ULL, static_cast<std::uint64_t>(run),
                             static_cast<std::uint64_t>(i)});
            Rng rng(run_seed);
            Realization phi = prior.sample(rng);
            Trace trace = run_policy(pi, *tasks[i], phi, rng.next_u64());
            ItemSet selected = trace.observed.real_domain(phi.item_count());
            run_value += tasks[i]->utility(selected, phi);
        }
        run_value /= static_cast<double>(tasks.size());
        sum += run_value;
        sum_sq += run_value * run_value;
    }
    double n = static_cast<double>(options.mc_runs);
    double mean = sum / n;
    double variance = options.mc_runs > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(variance / n), options.mc_runs};
}

}  // namespace submeta
