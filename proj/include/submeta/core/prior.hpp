#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "submeta/core/realization.hpp"
#include "submeta/errors.hpp"
#include "submeta/util/rng.hpp"

namespace submeta {

inline constexpr double kProbTolerance = 1e-12;

struct WeightedRealization {
    Realization realization;
    double prob = 0.0;
};

using RealizationSampler = std::function<Realization(Rng&)>;
using ConditionalSampler = std::function<Realization(const PartialRealization&, Rng&)>;

/// Prior distribution over realizations. Either explicit (enumerable
/// support, exact expectations) or generative (a sampler plus a
/// conditional sampler). Immutable after construction.
class Prior {
  public:
    static Prior explicit_prior(std::vector<WeightedRealization> support);
    static Prior generative(RealizationSampler sampler, ConditionalSampler conditional);

    bool is_explicit() const { return data_->is_explicit; }

    /// Enumerable support; throws NotEnumerable for generative priors.
    const std::vector<WeightedRealization>& support() const;

    Realization sample(Rng& rng) const;

    /// Draw a realization consistent with psi (explicit: discrete draw over
    /// the consistent slice; generative: the wrapped conditional sampler).
    Realization sample_conditioned(const PartialRealization& psi, Rng& rng) const;

    /// Number of support entries consistent with psi (explicit only).
    int consistent_support_count(const PartialRealization& psi) const;

  private:
    Prior() = default;

    struct Data {
        bool is_explicit = true;
        std::vector<WeightedRealization> support;
        RealizationSampler sampler;
        ConditionalSampler conditional;
        PartialRealization pending;  // conditioning already applied (generative)
    };

    std::shared_ptr<const Data> data_;

    friend Prior conditional_prior(const Prior&, const PartialRealization&);
};

/// Restriction of the prior to {phi : phi ~ psi}, renormalized. Explicit
/// priors filter and renormalize; generative priors accumulate psi into
/// their conditional sampler. Throws ZeroMassCondition when no consistent
/// realization has positive probability.
Prior conditional_prior(const Prior& p, const PartialRealization& psi);

}  // namespace submeta
