#include "submeta/policies/two_phase.hpp"

#include <map>

#include <json.hpp>

#include "submeta/errors.hpp"
#include "submeta/policies/selection.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

namespace {

int items_from_prior(const Prior& prior) {
    return prior.support().front().realization.item_count();
}

/// One random-greedy U-set: top-u_size of E' \ selected by average
/// marginal (training surrogate).
std::vector<ItemId> init_round_candidates(const std::vector<TaskPtr>& tasks, const Prior& prior,
                                          const ItemSet& selected, int n_items, int n_dummies,
                                          int u_size) {
    std::vector<ItemId> candidates;
    for (ItemId e = 0; e < n_items + n_dummies; ++e)
        if (!set_contains(selected, e)) candidates.push_back(e);
    std::vector<double> marginals(candidates.size());
    ItemSet real_selected = strip_dummies(selected, n_items);
    for (std::size_t i = 0; i < candidates.size(); ++i)
        marginals[i] = marginal_set_avg(tasks, prior, real_selected, candidates[i]);
    return top_items(candidates, marginals, n_items, static_cast<std::size_t>(u_size));
}

class TwoPhaseGreedyPolicy final : public Policy {
  public:
    TwoPhaseGreedyPolicy(int n_items, int budget, std::vector<ItemId> initial, Prior prior,
                         EstimatorConfig config)
        : Policy(n_items, budget),
          initial_(std::move(initial)),
          prior_(std::move(prior)),
          config_(config) {
        if (static_cast<int>(initial_.size()) > budget)
            throw InfeasibleBudget("initial set larger than budget");
    }

    std::vector<ItemId> initial_selection() const override { return initial_; }

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        std::size_t t = observed.size();
        if (t < initial_.size()) return {{initial_[t], 1.0}};
        std::vector<ItemId> candidates = real_items_not_in(item_count(), observed);
        if (candidates.empty()) {
            // Ground set exhausted before the budget; pad.
            return {{item_count() + static_cast<ItemId>(t), 1.0}};
        }
        std::vector<double> marginals = conditional_marginals(
            task, prior_, observed, candidates, item_count(), config_, psi_fingerprint(observed));
        return {{argmax_item(candidates, marginals, item_count()), 1.0}};
    }

  private:
    std::vector<ItemId> initial_;
    Prior prior_;
    EstimatorConfig config_;
};

class TwoPhaseRandomizedGreedyPolicy final : public Policy {
  public:
    TwoPhaseRandomizedGreedyPolicy(int n_items, int budget, std::vector<ItemId> initial,
                                   Prior prior, EstimatorConfig config)
        : Policy(n_items, budget),
          initial_(std::move(initial)),
          prior_(std::move(prior)),
          config_(config) {
        if (static_cast<int>(initial_.size()) >= budget)
            throw InfeasibleBudget("randomized execution phase needs l < k");
    }

    std::vector<ItemId> initial_selection() const override { return initial_; }

    ChoiceDist next(const Task& task, const PartialRealization& observed) const override {
        std::size_t t = observed.size();
        if (t < initial_.size()) return {{initial_[t], 1.0}};
        int u_size = budget() - static_cast<int>(initial_.size());
        std::vector<ItemId> candidates =
            extended_items_not_in(item_count(), budget(), observed);
        std::vector<double> marginals = conditional_marginals(
            task, prior_, observed, candidates, item_count(), config_, psi_fingerprint(observed));
        std::vector<ItemId> u = top_nonnegative_items(candidates, marginals, item_count(),
                                                      static_cast<std::size_t>(u_size));
        ChoiceDist dist;
        dist.reserve(u.size());
        double p = 1.0 / static_cast<double>(u.size());
        for (ItemId e : u) dist.push_back({e, p});
        return dist;
    }

  private:
    std::vector<ItemId> initial_;
    Prior prior_;
    EstimatorConfig config_;
};

}  // namespace

std::vector<ItemId> tgp_train(const std::vector<TaskPtr>& tasks, const Prior& prior, int l) {
    if (tasks.empty()) throw EmptyTaskSet("training needs at least one task");
    int n = items_from_prior(prior);
    if (l < 0 || l > n) throw InfeasibleBudget("initial-set size l must lie in [0, n]");

    std::vector<ItemId> selection;
    ItemSet selected;
    for (int round = 0; round < l; ++round) {
        std::vector<ItemId> candidates;
        for (ItemId e = 0; e < n; ++e)
            if (!set_contains(selected, e)) candidates.push_back(e);
        std::vector<double> marginals(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i)
            marginals[i] = marginal_set_avg(tasks, prior, selected, candidates[i]);
        ItemId pick = argmax_item(candidates, marginals, n);
        selection.push_back(pick);
        selected = set_with(selected, pick);
    }
    return selection;
}

PolicyPtr tgp_policy(std::vector<ItemId> initial, int n_items, int budget, Prior prior,
                     EstimatorConfig config) {
    return std::make_shared<TwoPhaseGreedyPolicy>(n_items, budget, std::move(initial),
                                                  std::move(prior), config);
}

std::vector<ItemId> random_greedy_init(const std::vector<TaskPtr>& tasks, const Prior& prior,
                                       int rounds, int u_size, int n_dummies, std::uint64_t seed) {
    if (tasks.empty()) throw EmptyTaskSet("training needs at least one task");
    int n = items_from_prior(prior);
    Rng rng(derive_seed({seed, 0x696e6974ULL}));

    std::vector<ItemId> selection;
    ItemSet selected;
    for (int round = 0; round < rounds; ++round) {
        auto u = init_round_candidates(tasks, prior, selected, n, n_dummies, u_size);
        ItemId pick = u[rng.below(u.size())];
        selection.push_back(pick);
        selected = set_with(selected, pick);
    }
    return selection;
}

std::vector<std::pair<ItemSet, double>> random_greedy_init_distribution(
    const std::vector<TaskPtr>& tasks, const Prior& prior, int rounds, int u_size, int n_dummies) {
    if (tasks.empty()) throw EmptyTaskSet("training needs at least one task");
    int n = items_from_prior(prior);

    std::map<ItemSet, double> front{{ItemSet{}, 1.0}};
    for (int round = 0; round < rounds; ++round) {
        std::map<ItemSet, double> next_front;
        for (const auto& [selected, prob] : front) {
            auto u = init_round_candidates(tasks, prior, selected, n, n_dummies, u_size);
            double branch = prob / static_cast<double>(u.size());
            for (ItemId e : u) next_front[set_with(selected, e)] += branch;
        }
        front = std::move(next_front);
    }
    return {front.begin(), front.end()};
}

std::vector<ItemId> trgp_train(const std::vector<TaskPtr>& tasks, const Prior& prior, int l, int k,
                               std::uint64_t seed) {
    if (l <= 0) throw InfeasibleBudget("randomized initialization needs l > 0");
    return random_greedy_init(tasks, prior, l, l, k, seed);
}

PolicyPtr trgp_policy(std::vector<ItemId> initial, int n_items, int budget, Prior prior,
                      EstimatorConfig config) {
    return std::make_shared<TwoPhaseRandomizedGreedyPolicy>(n_items, budget, std::move(initial),
                                                            std::move(prior), config);
}

std::string trained_init_to_json(const TrainedInit& init) {
    nlohmann::json doc;
    doc["algorithm"] = init.algorithm;
    doc["l"] = init.l;
    doc["k"] = init.k;
    doc["seed"] = init.seed;
    doc["initial_set"] = init.initial_set;
    return doc.dump();
}

TrainedInit trained_init_from_json(const std::string& text) {
    try {
        nlohmann::json doc = nlohmann::json::parse(text);
        TrainedInit init;
        init.algorithm = doc.at("algorithm").get<std::string>();
        init.l = doc.at("l").get<int>();
        init.k = doc.at("k").get<int>();
        init.seed = doc.at("seed").get<std::uint64_t>();
        init.initial_set = doc.at("initial_set").get<std::vector<ItemId>>();
        return init;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid trained-init document: ") + e.what());
    }
}

}  // namespace submeta
