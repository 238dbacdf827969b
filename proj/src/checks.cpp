#include "submeta/bruteforce/checks.hpp"

#include <map>
#include <set>

#include <json.hpp>

#include "submeta/errors.hpp"
#include "submeta/estimation/marginals.hpp"

namespace submeta {

namespace {

void check_guard(const Prior& prior, const OracleGuard& guard) {
    const auto& support = prior.support();
    int n = support.front().realization.item_count();
    if (n > guard.max_items) throw TooLarge("property check: ground set too large");
    if (static_cast<int>(support.size()) > guard.max_support)
        throw TooLarge("property check: support too large");
}

/// Every positive-mass partial realization: for each item subset A, the
/// distinct restrictions phi|A over the support.
std::vector<PartialRealization> positive_mass_psis(const Prior& prior, int n) {
    std::vector<PartialRealization> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::set<std::vector<StateValue>> seen;
        for (const auto& [phi, prob] : prior.support()) {
            if (prob <= 0.0) continue;
            std::vector<StateValue> sig;
            for (int e = 0; e < n; ++e)
                if (mask & (1u << e)) sig.push_back(phi.states[static_cast<std::size_t>(e)]);
            if (!seen.insert(sig).second) continue;
            PartialRealization psi;
            std::size_t idx = 0;
            for (int e = 0; e < n; ++e)
                if (mask & (1u << e)) psi.observe(e, sig[idx++]);
            out.push_back(std::move(psi));
        }
    }
    return out;
}

nlohmann::json violation_to_json(const PropertyViolation& v) {
    auto psi_json = [](const PartialRealization& psi) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& [item, state] : psi.canonical()) out.push_back({{"item", item}, {"state", state}});
        return out;
    };
    return {{"psi", psi_json(v.psi)},
            {"psi_prime", psi_json(v.psi_prime)},
            {"item", v.item},
            {"delta_psi", v.delta_psi},
            {"delta_psi_prime", v.delta_psi_prime}};
}

}  // namespace

std::string PropertyReport::to_json() const {
    nlohmann::json doc;
    doc["holds"] = holds;
    doc["violations"] = nlohmann::json::array();
    for (const auto& v : violations) doc["violations"].push_back(violation_to_json(v));
    return doc.dump();
}

PropertyReport check_adaptive_submodularity(const Task& task, const Prior& prior, double tolerance,
                                            const OracleGuard& guard) {
    check_guard(prior, guard);
    int n = prior.support().front().realization.item_count();
    auto psis = positive_mass_psis(prior, n);

    // Cache Delta(e | psi) per canonical psi, conditioning once per row.
    std::map<std::vector<std::pair<ItemId, StateValue>>, std::vector<double>> deltas;
    auto marginals_of = [&](const PartialRealization& psi) -> const std::vector<double>& {
        auto key = psi.canonical();
        auto it = deltas.find(key);
        if (it != deltas.end()) return it->second;
        std::vector<double> row(static_cast<std::size_t>(n), 0.0);
        Prior conditioned = conditional_prior(prior, psi);
        ItemSet base = psi.real_domain(n);
        std::vector<double> base_values;
        base_values.reserve(conditioned.support().size());
        for (const auto& [phi, prob] : conditioned.support())
            base_values.push_back(task.utility(base, phi));
        for (ItemId e = 0; e < n; ++e) {
            if (psi.contains(e)) continue;
            ItemSet extended = set_with(base, e);
            double value = 0.0;
            std::size_t i = 0;
            for (const auto& [phi, prob] : conditioned.support()) {
                value += prob * (task.utility(extended, phi) - base_values[i]);
                ++i;
            }
            row[static_cast<std::size_t>(e)] = value;
        }
        return deltas.emplace(std::move(key), std::move(row)).first->second;
    };

    PropertyReport report;
    for (const auto& psi_prime : psis) {
        const auto& after = marginals_of(psi_prime);
        // Subdomains of psi_prime give every psi subseteq psi_prime.
        const auto& entries = psi_prime.entries();
        std::uint32_t m = static_cast<std::uint32_t>(entries.size());
        for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
            if (sub == (1u << m) - 1) continue;  // psi == psi_prime is trivial
            PartialRealization psi;
            for (std::uint32_t i = 0; i < m; ++i)
                if (sub & (1u << i)) psi.observe(entries[i].first, entries[i].second);
            const auto& before = marginals_of(psi);
            for (ItemId e = 0; e < n; ++e) {
                if (psi_prime.contains(e)) continue;
                if (before[static_cast<std::size_t>(e)] <
                    after[static_cast<std::size_t>(e)] - tolerance) {
                    report.holds = false;
                    report.violations.push_back({psi, psi_prime, e,
                                                 before[static_cast<std::size_t>(e)],
                                                 after[static_cast<std::size_t>(e)]});
                }
            }
        }
    }
    return report;
}

PropertyReport check_adaptive_monotonicity(const Task& task, const Prior& prior, double tolerance,
                                           const OracleGuard& guard) {
    check_guard(prior, guard);
    int n = prior.support().front().realization.item_count();

    PropertyReport report;
    for (const auto& psi : positive_mass_psis(prior, n)) {
        for (ItemId e = 0; e < n; ++e) {
            if (psi.contains(e)) continue;
            double delta = marginal_item_exact(task, prior, psi, e).mean;
            if (delta < -tolerance) {
                report.holds = false;
                report.violations.push_back({psi, psi, e, delta, delta});
            }
        }
    }
    return report;
}

}  // namespace submeta
