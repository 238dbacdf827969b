#include "submeta/verify/ratios.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "submeta/bruteforce/checks.hpp"
#include "submeta/bruteforce/oracle.hpp"
#include "submeta/core/evaluate.hpp"
#include "submeta/errors.hpp"
#include "submeta/gen/instances.hpp"
#include "submeta/policies/boundary.hpp"
#include "submeta/policies/two_phase.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

namespace {

constexpr double kRatioTolerance = 1e-9;

double power_term(int c) {
    double base = 1.0 - 1.0 / static_cast<double>(c);
    double out = 1.0;
    for (int i = 0; i < c; ++i) out *= base;
    return out;
}

double regime_bound(Regime regime, int l, int k) {
    switch (regime) {
        case Regime::monotone:
            return 0.5;
        case Regime::nonmonotone:
            return 0.5 * power_term(l) * power_term(k - l);
        case Regime::kl1:
            return 1.0 / (1.0 + std::numbers::e);
        case Regime::l1:
            return 1.0 / (2.0 * std::numbers::e);
    }
    throw ConfigError("unknown regime");
}

struct RegimeDraw {
    int l;
    int k;
};

RegimeDraw draw_lk(Regime regime, Rng& rng) {
    switch (regime) {
        case Regime::monotone: {
            int k = 2 + static_cast<int>(rng.below(3));  // 2..4
            int l = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
            return {l, k};
        }
        case Regime::nonmonotone: {
            constexpr RegimeDraw options[] = {{2, 4}, {2, 5}, {3, 5}};
            return options[rng.below(3)];
        }
        case Regime::kl1: {
            int k = 2 + static_cast<int>(rng.below(3));
            return {k - 1, k};
        }
        case Regime::l1: {
            int k = 2 + static_cast<int>(rng.below(3));
            return {1, k};
        }
    }
    throw ConfigError("unknown regime");
}

bool any_monotonicity_violation(const GeneratedInstance& inst) {
    for (const auto& task : inst.tasks)
        if (!check_adaptive_monotonicity(*task, inst.prior).holds) return true;
    return false;
}

/// Draws a validated instance. Every generated task must pass the
/// exhaustive submodularity check; non-monotone regimes additionally look
/// for a genuine monotonicity violation (falling back after a few tries:
/// the bound holds either way).
GeneratedInstance draw_instance(Regime regime, const RegimeDraw& lk, std::uint64_t seed) {
    bool want_nonmonotone = regime != Regime::monotone;
    InstanceParams params;
    params.min_items = std::max(params.min_items, lk.l);
    GeneratedInstance fallback;
    bool have_fallback = false;
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::uint64_t sub = derive_seed({seed, static_cast<std::uint64_t>(attempt)});
        GeneratedInstance inst = want_nonmonotone ? random_nonmonotone_instance(sub, params)
                                                  : random_monotone_instance(sub, params);
        bool submodular = true;
        for (const auto& task : inst.tasks)
            submodular = submodular && check_adaptive_submodularity(*task, inst.prior).holds;
        if (!submodular) continue;  // defensive; the family guarantees it
        if (!want_nonmonotone) {
            bool monotone = true;
            for (const auto& task : inst.tasks)
                monotone = monotone && check_adaptive_monotonicity(*task, inst.prior).holds;
            if (!monotone) continue;
            return inst;
        }
        if (any_monotonicity_violation(inst)) return inst;
        if (!have_fallback) {
            fallback = inst;
            have_fallback = true;
        }
    }
    if (have_fallback) return fallback;
    throw Error("could not generate a valid instance");
}

double exact_policy_value(Regime regime, const GeneratedInstance& inst, const RegimeDraw& lk) {
    EstimatorConfig exact;
    exact.mode = EstimatorConfig::Mode::exact;

    PolicyPtr policy;
    switch (regime) {
        case Regime::monotone: {
            auto initial = tgp_train(inst.tasks, inst.prior, lk.l);
            policy = tgp_policy(std::move(initial), inst.n, lk.k, inst.prior, exact);
            break;
        }
        case Regime::nonmonotone: {
            // Expand the randomized initialization into exact mixture branches.
            MixtureBranches branches;
            for (const auto& [set, prob] :
                 random_greedy_init_distribution(inst.tasks, inst.prior, lk.l, lk.l, lk.k)) {
                std::vector<ItemId> ordered(set.begin(), set.end());
                branches.emplace_back(
                    trgp_policy(std::move(ordered), inst.n, lk.k, inst.prior, exact), prob);
            }
            policy = std::make_shared<MixturePolicy>(inst.n, lk.k, std::move(branches));
            break;
        }
        case Regime::kl1:
            policy = pi_a_exact(inst.tasks, inst.prior, lk.l, lk.k);
            break;
        case Regime::l1:
            policy = pi_b(inst.prior, inst.n, 1, lk.k, exact);
            break;
    }
    return f_avg(*policy, inst.tasks, inst.prior).mean;
}

}  // namespace

Regime regime_from_string(const std::string& name) {
    if (name == "monotone") return Regime::monotone;
    if (name == "nonmonotone") return Regime::nonmonotone;
    if (name == "kl1") return Regime::kl1;
    if (name == "l1") return Regime::l1;
    throw ConfigError("unknown regime: " + name);
}

std::string regime_to_string(Regime regime) {
    switch (regime) {
        case Regime::monotone: return "monotone";
        case Regime::nonmonotone: return "nonmonotone";
        case Regime::kl1: return "kl1";
        case Regime::l1: return "l1";
    }
    return "unknown";
}

RatioReport verify_ratios(Regime regime, long count, std::uint64_t seed) {
    if (count < 1) throw ConfigError("verify_ratios needs count >= 1");

    RatioReport report;
    report.regime = regime;
    report.seed = seed;
    double ratio_sum = 0.0;
    report.min_ratio = std::numeric_limits<double>::infinity();

    for (long i = 0; i < count; ++i) {
        std::uint64_t instance_seed = derive_seed({seed, 0x7261746bULL, static_cast<std::uint64_t>(i)});
        Rng rng(instance_seed);
        RegimeDraw lk = draw_lk(regime, rng);
        GeneratedInstance inst = draw_instance(regime, lk, instance_seed);

        RatioCase entry;
        entry.instance_seed = instance_seed;
        entry.n = inst.n;
        entry.m = static_cast<int>(inst.tasks.size());
        entry.l = lk.l;
        entry.k = lk.k;
        entry.bound = regime_bound(regime, lk.l, lk.k);
        entry.policy_value = exact_policy_value(regime, inst, lk);
        entry.optimum = optimal_two_phase(inst.tasks, inst.prior, lk.l, lk.k).value;
        entry.ratio = entry.optimum > kRatioTolerance ? entry.policy_value / entry.optimum : 1.0;
        entry.violated = entry.policy_value + kRatioTolerance < entry.bound * entry.optimum;

        if (entry.violated) ++report.violations;
        report.min_ratio = std::min(report.min_ratio, entry.ratio);
        ratio_sum += entry.ratio;
        report.cases.push_back(entry);
    }
    report.mean_ratio = ratio_sum / static_cast<double>(count);
    return report;
}

std::string RatioReport::to_json() const {
    nlohmann::json doc;
    doc["regime"] = regime_to_string(regime);
    doc["seed"] = seed;
    doc["count"] = cases.size();
    doc["violations"] = violations;
    doc["min_ratio"] = min_ratio;
    doc["mean_ratio"] = mean_ratio;
    auto rows = nlohmann::json::array();
    for (const auto& c : cases) {
        rows.push_back({{"instance_seed", c.instance_seed},
                        {"n", c.n},
                        {"m", c.m},
                        {"l", c.l},
                        {"k", c.k},
                        {"policy_value", c.policy_value},
                        {"optimum", c.optimum},
                        {"ratio", c.ratio},
                        {"bound", c.bound},
                        {"violated", c.violated}});
    }
    doc["cases"] = std::move(rows);
    return doc.dump();
}

std::string RatioReport::summary() const {
    std::ostringstream out;
    out << "regime=" << regime_to_string(regime) << " instances=" << cases.size()
        << " violations=" << violations << " min_ratio=" << min_ratio
        << " mean_ratio=" << mean_ratio;
    return out.str();
}

}  // namespace submeta
