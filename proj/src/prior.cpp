#include "submeta/core/prior.hpp"

#include <cmath>

namespace submeta {

namespace {

PartialRealization merge(const PartialRealization& a, const PartialRealization& b) {
    PartialRealization out = a;
    for (const auto& [item, state] : b.entries()) {
        auto existing = out.state_of(item);
        if (existing) {
            if (*existing != state)
                throw ZeroMassCondition("conflicting observations while conditioning");
        } else {
            out.observe(item, state);
        }
    }
    return out;
}

}  // namespace

Prior Prior::explicit_prior(std::vector<WeightedRealization> support) {
    double total = 0.0;
    for (const auto& wr : support) {
        if (wr.prob < 0.0) throw Error("negative probability in explicit prior");
        total += wr.prob;
    }
    if (std::abs(total - 1.0) > kProbTolerance)
        throw Error("explicit prior probabilities must sum to 1");
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i].realization.index < 0) support[i].realization.index = static_cast<int>(i);

    Prior p;
    auto data = std::make_shared<Data>();
    data->is_explicit = true;
    data->support = std::move(support);
    p.data_ = std::move(data);
    return p;
}

Prior Prior::generative(RealizationSampler sampler, ConditionalSampler conditional) {
    Prior p;
    auto data = std::make_shared<Data>();
    data->is_explicit = false;
    data->sampler = std::move(sampler);
    data->conditional = std::move(conditional);
    p.data_ = std::move(data);
    return p;
}

const std::vector<WeightedRealization>& Prior::support() const {
    if (!data_->is_explicit) throw NotEnumerable("generative prior has no enumerable support");
    return data_->support;
}

Realization Prior::sample(Rng& rng) const {
    if (data_->is_explicit) {
        double u = rng.next_double();
        double acc = 0.0;
        for (const auto& wr : data_->support) {
            acc += wr.prob;
            if (u < acc) return wr.realization;
        }
        return data_->support.back().realization;
    }
    if (data_->pending.empty()) return data_->sampler(rng);
    return data_->conditional(data_->pending, rng);
}

Realization Prior::sample_conditioned(const PartialRealization& psi, Rng& rng) const {
    if (data_->is_explicit) {
        double mass = 0.0;
        for (const auto& wr : data_->support)
            if (wr.prob > 0.0 && is_consistent(psi, wr.realization)) mass += wr.prob;
        if (mass <= 0.0) throw ZeroMassCondition("no consistent realization has positive mass");
        double u = rng.next_double() * mass;
        double acc = 0.0;
        const WeightedRealization* last = nullptr;
        for (const auto& wr : data_->support) {
            if (wr.prob <= 0.0 || !is_consistent(psi, wr.realization)) continue;
            last = &wr;
            acc += wr.prob;
            if (u < acc) return wr.realization;
        }
        return last->realization;
    }
    return data_->conditional(merge(data_->pending, psi), rng);
}

int Prior::consistent_support_count(const PartialRealization& psi) const {
    int count = 0;
    for (const auto& wr : support())
        if (wr.prob > 0.0 && is_consistent(psi, wr.realization)) ++count;
    return count;
}

Prior conditional_prior(const Prior& p, const PartialRealization& psi) {
    if (p.data_->is_explicit) {
        std::vector<WeightedRealization> kept;
        double mass = 0.0;
        for (const auto& wr : p.data_->support) {
            if (wr.prob > 0.0 && is_consistent(psi, wr.realization)) {
                kept.push_back(wr);
                mass += wr.prob;
            }
        }
        if (mass <= 0.0) throw ZeroMassCondition("conditioning event has zero probability");
        for (auto& wr : kept) wr.prob /= mass;
        return Prior::explicit_prior(std::move(kept));
    }
    Prior out;
    auto data = std::make_shared<Prior::Data>();
    data->is_explicit = false;
    data->sampler = p.data_->sampler;
    data->conditional = p.data_->conditional;
    data->pending = merge(p.data_->pending, psi);
    out.data_ = std::move(data);
    return out;
}

}  // namespace submeta
