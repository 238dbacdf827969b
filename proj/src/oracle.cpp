#include "submeta/bruteforce/oracle.hpp"

#include <sstream>

#include "submeta/errors.hpp"
#include "submeta/estimation/marginals.hpp"

namespace submeta {

namespace {

void check_guard(const Prior& prior, int budget, const OracleGuard& guard) {
    const auto& support = prior.support();
    int n = support.front().realization.item_count();
    if (n > guard.max_items)
        throw TooLarge("oracle guard: ground set too large (" + std::to_string(n) + ")");
    if (static_cast<int>(support.size()) > guard.max_support)
        throw TooLarge("oracle guard: support too large (" + std::to_string(support.size()) + ")");
    if (budget > guard.max_budget)
        throw TooLarge("oracle guard: budget too large (" + std::to_string(budget) + ")");
}

std::string canonical_key(const PartialRealization& psi) {
    std::ostringstream out;
    for (const auto& [item, state] : psi.canonical()) out << item << ':' << state << ';';
    return out.str();
}

struct ContinuationSolver {
    const Task& task;
    const Prior& prior;
    int n_items;
    // Key: (canonical psi, budget). Partial realizations with identical
    // content but different observation order share a value.
    std::map<std::pair<std::string, int>, std::pair<double, ItemId>> memo;

    /// Expected utility of stopping now: E[f(dom(psi), Phi) | Phi ~ psi].
    double stop_value(const PartialRealization& psi) {
        Prior conditioned = conditional_prior(prior, psi);
        ItemSet selected = psi.real_domain(n_items);
        double value = 0.0;
        for (const auto& [phi, prob] : conditioned.support())
            if (prob > 0.0) value += prob * task.utility(selected, phi);
        return value;
    }

    std::pair<double, ItemId> solve(PartialRealization& psi, int budget) {
        auto key = std::make_pair(canonical_key(psi), budget);
        auto found = memo.find(key);
        if (found != memo.end()) return found->second;

        double best = stop_value(psi);
        ItemId best_item = -1;  // -1 = stop (pad with dummies)
        if (budget > 0) {
            Prior conditioned = conditional_prior(prior, psi);
            for (ItemId e = 0; e < n_items; ++e) {
                if (psi.contains(e)) continue;
                // Branch on e's state distribution under the conditioned prior.
                std::map<StateValue, double> state_probs;
                for (const auto& [phi, prob] : conditioned.support())
                    if (prob > 0.0) state_probs[phi.states[static_cast<std::size_t>(e)]] += prob;
                double value = 0.0;
                for (const auto& [state, prob] : state_probs) {
                    psi.observe(e, state);
                    value += prob * solve(psi, budget - 1).first;
                    psi.pop_back();
                }
                if (value > best) {
                    best = value;
                    best_item = e;
                }
            }
        }
        auto result = std::make_pair(best, best_item);
        memo.emplace(std::move(key), result);
        return result;
    }
};

}  // namespace

double optimal_continuation(const Task& task, const Prior& prior, const PartialRealization& psi,
                            int budget, const OracleGuard& guard) {
    if (budget < 0) throw InfeasibleBudget("continuation budget must be non-negative");
    check_guard(prior, budget, guard);
    ContinuationSolver solver{task, prior, prior.support().front().realization.item_count(), {}};
    PartialRealization scratch = psi;
    return solver.solve(scratch, budget).first;
}

OptimalValue optimal_two_phase(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                               const OracleGuard& guard) {
    if (tasks.empty()) throw EmptyTaskSet("optimal_two_phase needs at least one task");
    if (l < 0 || k < l) throw InfeasibleBudget("need 0 <= l <= k");
    check_guard(prior, k - l, guard);
    const auto& support = prior.support();
    int n = support.front().realization.item_count();
    if (l > n) throw InfeasibleBudget("initial-set size exceeds ground set");

    // Enumerate all size-l subsets of the real items.
    std::vector<ItemSet> initial_sets;
    ItemSet current;
    auto recurse = [&](auto&& self, ItemId next) -> void {
        if (static_cast<int>(current.size()) == l) {
            initial_sets.push_back(current);
            return;
        }
        for (ItemId e = next; e < n; ++e) {
            current.push_back(e);
            self(self, e + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);

    OptimalValue best;
    best.value = -1.0;
    for (const auto& s : initial_sets) {
        double total = 0.0;
        std::map<std::pair<int, std::string>, ItemId> continuation;
        for (const auto& task : tasks) {
            ContinuationSolver solver{*task, prior, n, {}};
            // Group realizations by the states S would reveal.
            std::map<std::vector<StateValue>, double> observations;
            for (const auto& [phi, prob] : support) {
                if (prob <= 0.0) continue;
                std::vector<StateValue> sig;
                sig.reserve(s.size());
                for (ItemId e : s) sig.push_back(phi.states[static_cast<std::size_t>(e)]);
                observations[sig] += prob;
            }
            for (const auto& [sig, prob] : observations) {
                PartialRealization psi;
                for (std::size_t i = 0; i < s.size(); ++i) psi.observe(s[i], sig[i]);
                auto [value, next_item] = solver.solve(psi, k - l);
                total += prob * value;
                continuation[{task->id(), canonical_key(psi)}] = next_item;
            }
        }
        total /= static_cast<double>(tasks.size());
        if (total > best.value) {
            best.value = total;
            best.initial_set = s;
            best.continuation = std::move(continuation);
        }
    }
    return best;
}

}  // namespace submeta
