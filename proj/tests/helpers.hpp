#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "submeta/core/instance.hpp"
#include "submeta/core/prior.hpp"
#include "submeta/core/task.hpp"

namespace submeta::test {

/// Modular task over deterministic single-state items: f(S) = sum of
/// per-item weights.
inline TaskPtr modular_task(int id, std::vector<double> weights) {
    auto fn = [weights](const ItemSet& items, const Realization&) {
        double total = 0.0;
        for (ItemId e : items) total += weights[static_cast<std::size_t>(e)];
        return total;
    };
    return std::make_shared<CallbackTask>(id, true, true, std::move(fn));
}

inline Prior deterministic_prior(int n) {
    return Prior::explicit_prior({{Realization{std::vector<StateValue>(static_cast<std::size_t>(n), 0), 0}, 1.0}});
}

/// Independent Bernoulli states over n two-state items.
inline Prior bernoulli_prior(const std::vector<double>& p_one) {
    int n = static_cast<int>(p_one.size());
    std::vector<WeightedRealization> support;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Realization phi;
        double prob = 1.0;
        for (int e = 0; e < n; ++e) {
            bool one = mask & (1u << e);
            phi.states.push_back(one ? 1 : 0);
            prob *= one ? p_one[static_cast<std::size_t>(e)] : 1.0 - p_one[static_cast<std::size_t>(e)];
        }
        phi.index = static_cast<int>(mask);
        support.push_back({std::move(phi), prob});
    }
    return Prior::explicit_prior(std::move(support));
}

/// Re-exposes an explicit prior through the generative interface, for
/// exercising Monte Carlo paths against exact ones.
inline Prior as_generative(const Prior& explicit_prior) {
    auto support = explicit_prior.support();  // copy
    auto sampler = [support](Rng& rng) {
        double u = rng.next_double();
        double acc = 0.0;
        for (const auto& wr : support) {
            acc += wr.prob;
            if (u < acc) return wr.realization;
        }
        return support.back().realization;
    };
    auto conditional = [support](const PartialRealization& psi, Rng& rng) {
        double mass = 0.0;
        for (const auto& wr : support)
            if (wr.prob > 0.0 && is_consistent(psi, wr.realization)) mass += wr.prob;
        if (mass <= 0.0) throw ZeroMassCondition("no consistent realization");
        double u = rng.next_double() * mass;
        double acc = 0.0;
        const Realization* last = nullptr;
        for (const auto& wr : support) {
            if (wr.prob <= 0.0 || !is_consistent(psi, wr.realization)) continue;
            last = &wr.realization;
            acc += wr.prob;
            if (u < acc) return wr.realization;
        }
        return *last;
    };
    return Prior::generative(std::move(sampler), std::move(conditional));
}

/// State-dependent weighted coverage instance used across the suites:
/// 3 items, 2 states, independent prior. Item e in state s covers
/// covers[e][s] (bitmask over 4 points with weights w).
struct CoverageFixture {
    std::vector<double> point_weights{1.0, 2.0, 0.5, 1.5};
    // covers[item][state]: bitmask over the 4 points
    std::vector<std::vector<std::uint32_t>> covers{
        {0b0011, 0b0100}, {0b0110, 0b1000}, {0b1001, 0b0010}};
    std::vector<double> p_one{0.3, 0.5, 0.7};

    TaskPtr task(int id = 0) const {
        auto weights = point_weights;
        auto cov = covers;
        auto fn = [weights, cov](const ItemSet& items, const Realization& phi) {
            std::uint32_t covered = 0;
            for (ItemId e : items)
                covered |= cov[static_cast<std::size_t>(e)]
                              [static_cast<std::size_t>(phi.states[static_cast<std::size_t>(e)])];
            double total = 0.0;
            for (std::size_t p = 0; p < weights.size(); ++p)
                if (covered & (1u << p)) total += weights[p];
            return total;
        };
        return std::make_shared<CallbackTask>(id, true, true, std::move(fn));
    }

    Prior prior() const { return bernoulli_prior(p_one); }
};

inline bool approx_equal(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

}  // namespace submeta::test
