#pragma once

#include <string>
#include <vector>

#include "submeta/core/prior.hpp"
#include "submeta/core/task.hpp"

namespace submeta {

/// A self-contained toy problem: ground set, explicit prior, task list.
struct Instance {
    int n = 0;
    int n_states = 1;
    Prior prior = Prior::explicit_prior({{Realization{{}, 0}, 1.0}});
    std::vector<TaskPtr> tasks;
};

/// Parses the toy-instance document:
///   {"n": int, "states": int,
///    "realizations": [{"states": [int,...], "prob": float}, ...],
///    "tasks": [{"utilities": {"<sorted-set-key>|<realization-index>": float}}]}
/// Set keys are comma-joined ascending item ids ("" for the empty set);
/// missing utility entries default to 0.
Instance load_instance_json(const std::string& text);
Instance load_instance_file(const std::string& path);

}  // namespace submeta
