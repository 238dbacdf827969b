#include "submeta/gen/instances.hpp"

#include <cmath>

#include "submeta/util/rng.hpp"

namespace submeta {

namespace {

struct CoverageData {
    int n = 0;
    int n_states = 1;
    int n_points = 0;
    std::vector<double> weights;                         // per point
    std::vector<std::vector<std::uint32_t>> covers;      // [task][item * n_states + state]
    std::vector<std::vector<double>> penalties;          // [task][item], empty when monotone
};

Prior independent_prior(int n, int n_states, Rng& rng) {
    // Per-item state distributions, then the explicit product over O^n.
    std::vector<std::vector<double>> item_probs(static_cast<std::size_t>(n));
    for (auto& probs : item_probs) {
        probs.resize(static_cast<std::size_t>(n_states));
        double total = 0.0;
        for (auto& p : probs) {
            p = 0.2 + rng.next_double();
            total += p;
        }
        for (auto& p : probs) p /= total;
    }

    std::vector<WeightedRealization> support;
    std::vector<StateValue> states(static_cast<std::size_t>(n), 0);
    auto recurse = [&](auto&& self, int item, double prob) -> void {
        if (item == n) {
            support.push_back({Realization{states, static_cast<int>(support.size())}, prob});
            return;
        }
        for (int s = 0; s < n_states; ++s) {
            states[static_cast<std::size_t>(item)] = s;
            self(self, item + 1, prob * item_probs[static_cast<std::size_t>(item)][static_cast<std::size_t>(s)]);
        }
    };
    recurse(recurse, 0, 1.0);

    // Exact renormalization to absorb floating-point drift.
    double total = 0.0;
    for (const auto& wr : support) total += wr.prob;
    for (auto& wr : support) wr.prob /= total;
    return Prior::explicit_prior(std::move(support));
}

GeneratedInstance build_instance(std::uint64_t seed, const InstanceParams& params, bool monotone) {
    Rng rng(derive_seed({seed, monotone ? 0x6d6f6eULL : 0x6e6f6eULL}));

    GeneratedInstance inst;
    inst.n = params.min_items +
             static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_items - params.min_items + 1)));
    inst.n_states = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_states)));
    int m = params.min_tasks +
            static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_tasks - params.min_tasks + 1)));

    auto data = std::make_shared<CoverageData>();
    data->n = inst.n;
    data->n_states = inst.n_states;
    data->n_points = params.min_points +
                     static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_points - params.min_points + 1)));

    double raw_total = 0.0;
    for (int p = 0; p < data->n_points; ++p) {
        data->weights.push_back(0.1 + rng.next_double());
        raw_total += data->weights.back();
    }
    double scale = params.max_total_weight / raw_total;
    for (auto& w : data->weights) w *= scale;

    for (int t = 0; t < m; ++t) {
        std::vector<std::uint32_t> covers(static_cast<std::size_t>(inst.n * inst.n_states), 0);
        for (auto& mask : covers)
            for (int p = 0; p < data->n_points; ++p)
                if (rng.bernoulli(0.5)) mask |= (1u << p);
        data->covers.push_back(std::move(covers));
        if (!monotone) {
            std::vector<double> pen(static_cast<std::size_t>(inst.n), 0.0);
            for (auto& v : pen) v = rng.next_double() * params.max_penalty;
            data->penalties.push_back(std::move(pen));
        }
    }

    inst.prior = independent_prior(inst.n, inst.n_states, rng);

    for (int t = 0; t < m; ++t) {
        auto utility = [data, t](const ItemSet& items, const Realization& phi) {
            std::uint32_t covered = 0;
            for (ItemId e : items) {
                int state = static_cast<int>(phi.states[static_cast<std::size_t>(e)]);
                covered |= data->covers[static_cast<std::size_t>(t)]
                                       [static_cast<std::size_t>(e * data->n_states + state)];
            }
            double value = 0.0;
            for (int p = 0; p < data->n_points; ++p)
                if (covered & (1u << p)) value += data->weights[static_cast<std::size_t>(p)];
            if (!data->penalties.empty()) {
                // Decreasing modular part: unselected items keep their penalty.
                for (ItemId e = 0; e < data->n; ++e)
                    if (!set_contains(items, e))
                        value += data->penalties[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
            }
            return value;
        };
        inst.tasks.push_back(std::make_shared<CallbackTask>(t, monotone, true, std::move(utility)));
    }
    return inst;
}

}  // namespace

GeneratedInstance random_monotone_instance(std::uint64_t seed, const InstanceParams& params) {
    return build_instance(seed, params, true);
}

GeneratedInstance random_nonmonotone_instance(std::uint64_t seed, const InstanceParams& params) {
    return build_instance(seed, params, false);
}

}  // namespace submeta
