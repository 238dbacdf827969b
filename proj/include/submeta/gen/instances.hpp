#pragma once

#include <cstdint>
#include <vector>

#include "submeta/core/prior.hpp"
#include "submeta/core/task.hpp"

namespace submeta {

/// Bounds for random toy instances. Defaults stay inside the exact-oracle
/// guard.
struct InstanceParams {
    int min_items = 2;
    int max_items = 5;
    int max_states = 2;
    int min_tasks = 1;
    int max_tasks = 3;
    int min_points = 3;   // coverage universe
    int max_points = 6;
    double max_total_weight = 10.0;
    double max_penalty = 3.0;  // non-monotone: per-item penalty bound
};

struct GeneratedInstance {
    int n = 0;
    int n_states = 1;
    Prior prior = Prior::explicit_prior({{Realization{{}, 0}, 1.0}});
    std::vector<TaskPtr> tasks;
};

/// Weighted-coverage tasks with state-dependent cover sets and an
/// independent product prior over item states: adaptive monotone and
/// adaptive submodular by construction.
GeneratedInstance random_monotone_instance(std::uint64_t seed, const InstanceParams& params = {});

/// Coverage plus a decreasing modular term (each unselected item
/// contributes its penalty), i.e. coverage minus per-item penalties kept
/// non-negative by the constant penalty total. Adaptive submodular, in
/// general not adaptive monotone.
GeneratedInstance random_nonmonotone_instance(std::uint64_t seed, const InstanceParams& params = {});

}  // namespace submeta
