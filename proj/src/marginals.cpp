#include "submeta/estimation/marginals.hpp"

#include <cmath>

#include "submeta/errors.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

namespace {

double sample_variance(double sum, double sum_sq, long n) {
    if (n <= 1) return 0.0;
    double mean = sum / static_cast<double>(n);
    return std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
}

}  // namespace

MarginalEstimate marginal_item_exact(const Task& task, const Prior& prior,
                                     const PartialRealization& psi, ItemId e) {
    const int n = prior.support().empty()
                      ? 0
                      : prior.support().front().realization.item_count();
    if (is_dummy(e, n)) return {0.0, 0.0, 0};

    Prior conditioned = conditional_prior(prior, psi);
    ItemSet base = psi.real_domain(n);
    ItemSet extended = set_with(base, e);
    if (extended == base) return {0.0, 0.0, 0};

    double value = 0.0;
    for (const auto& [phi, prob] : conditioned.support()) {
        if (prob <= 0.0) continue;
        value += prob * (task.utility(extended, phi) - task.utility(base, phi));
    }
    return {value, 0.0, 0};
}

MarginalEstimate marginal_item_mc(const Task& task, const Prior& prior,
                                  const PartialRealization& psi, ItemId e, long n_samples,
                                  std::uint64_t seed) {
    if (n_samples < 1) throw Error("marginal_item_mc needs n_samples >= 1");
    Rng rng(derive_seed({seed, 0x6d63ULL}));

    double sum = 0.0;
    double sum_sq = 0.0;
    int n_items = -1;
    for (long s = 0; s < n_samples; ++s) {
        Realization phi = prior.sample_conditioned(psi, rng);
        if (n_items < 0) n_items = phi.item_count();
        double value = 0.0;
        if (!is_dummy(e, n_items)) {
            ItemSet base = psi.real_domain(n_items);
            ItemSet extended = set_with(base, e);
            if (extended != base)
                value = task.utility(extended, phi) - task.utility(base, phi);
        }
        sum += value;
        sum_sq += value * value;
    }
    double n = static_cast<double>(n_samples);
    return {sum / n, std::sqrt(sample_variance(sum, sum_sq, n_samples) / n), n_samples};
}

double expected_set_utility(const Task& task, const Prior& prior, const ItemSet& items) {
    double value = 0.0;
    for (const auto& [phi, prob] : prior.support()) {
        if (prob <= 0.0) continue;
        value += prob * task.utility(items, phi);
    }
    return value;
}

double marginal_set_avg(const std::vector<TaskPtr>& tasks, const Prior& prior, const ItemSet& set,
                        ItemId e) {
    if (tasks.empty()) throw EmptyTaskSet("marginal_set_avg needs at least one task");
    const int n = prior.support().empty()
                      ? 0
                      : prior.support().front().realization.item_count();
    if (is_dummy(e, n)) return 0.0;
    ItemSet extended = set_with(set, e);
    if (extended == set) return 0.0;

    double total = 0.0;
    for (const auto& task : tasks)
        total += expected_set_utility(*task, prior, extended) - expected_set_utility(*task, prior, set);
    return total / static_cast<double>(tasks.size());
}

MarginalEstimate marginal_set_avg_mc(const std::vector<TaskPtr>& tasks, const Prior& prior,
                                     const ItemSet& set, ItemId e, long n_samples,
                                     std::uint64_t seed) {
    if (tasks.empty()) throw EmptyTaskSet("marginal_set_avg_mc needs at least one task");
    if (n_samples < 1) throw Error("marginal_set_avg_mc needs n_samples >= 1");
    Rng rng(derive_seed({seed, 0x7361ULL}));

    double sum = 0.0;
    double sum_sq = 0.0;
    for (long s = 0; s < n_samples; ++s) {
        Realization phi = prior.sample(rng);
        double value = 0.0;
        if (!is_dummy(e, phi.item_count())) {
            ItemSet extended = set_with(set, e);
            if (extended != set) {
                for (const auto& task : tasks)
                    value += task->utility(extended, phi) - task->utility(set, phi);
                value /= static_cast<double>(tasks.size());
            }
        }
        sum += value;
        sum_sq += value * value;
    }
    double n = static_cast<double>(n_samples);
    return {sum / n, std::sqrt(sample_variance(sum, sum_sq, n_samples) / n), n_samples};
}

MarginalEstimate marginal_policy(const Task& task, const Prior& prior, const ItemSet& y,
                                 const Policy& pi) {
    double value = exact_policy_expectation(
        pi, task, prior, [&task, &y](const ItemSet& selected, const Realization& phi) {
            return task.utility(set_union_of(y, selected), phi) - task.utility(y, phi);
        });
    return {value, 0.0, 0};
}

std::vector<double> conditional_marginals(const Task& task, const Prior& prior,
                                          const PartialRealization& psi,
                                          const std::vector<ItemId>& candidates, int n_items,
                                          const EstimatorConfig& config, std::uint64_t round_salt) {
    bool exact;
    switch (config.mode) {
        case EstimatorConfig::Mode::exact:
            exact = true;
            break;
        case EstimatorConfig::Mode::monte_carlo:
            exact = false;
            break;
        default:
            exact = prior.is_explicit() &&
                    prior.consistent_support_count(psi) <= config.max_exact_support;
    }

    std::vector<double> out(candidates.size(), 0.0);
    ItemSet base = psi.real_domain(n_items);

    if (exact) {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            out[i] = marginal_item_exact(task, prior, psi, candidates[i]).mean;
        return out;
    }

    // One conditioned pool shared by every candidate.
    Rng rng(derive_seed({config.seed, 0x726e64ULL, round_salt}));
    std::vector<Realization> pool;
    pool.reserve(static_cast<std::size_t>(config.mc_samples));
    for (long s = 0; s < config.mc_samples; ++s) pool.push_back(prior.sample_conditioned(psi, rng));

    std::vector<double> base_values;
    base_values.reserve(pool.size());
    for (const auto& phi : pool) base_values.push_back(task.utility(base, phi));

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ItemId e = candidates[i];
        if (is_dummy(e, n_items)) continue;
        ItemSet extended = set_with(base, e);
        if (extended == base) continue;
        double sum = 0.0;
        for (std::size_t s = 0; s < pool.size(); ++s)
            sum += task.utility(extended, pool[s]) - base_values[s];
        out[i] = sum / static_cast<double>(pool.size());
    }
    return out;
}

}  // namespace submeta
