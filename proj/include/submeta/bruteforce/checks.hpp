#pragma once

#include <string>
#include <vector>

#include "submeta/bruteforce/oracle.hpp"

namespace submeta {

struct PropertyViolation {
    PartialRealization psi;
    PartialRealization psi_prime;
    ItemId item = -1;
    double delta_psi = 0.0;
    double delta_psi_prime = 0.0;
};

struct PropertyReport {
    bool holds = true;
    std::vector<PropertyViolation> violations;

    std::string to_json() const;
};

/// Exhaustively checks Delta(e | psi) >= Delta(e | psi') for every
/// positive-mass subrealization pair psi subseteq psi' and every real item
/// e outside dom(psi'). Violations beyond `tolerance` are recorded.
PropertyReport check_adaptive_submodularity(const Task& task, const Prior& prior,
                                            double tolerance = 1e-9,
                                            const OracleGuard& guard = {});

/// Exhaustively checks Delta(e | psi) >= 0 for every positive-mass psi and
/// real item e outside dom(psi).
PropertyReport check_adaptive_monotonicity(const Task& task, const Prior& prior,
                                           double tolerance = 1e-9, const OracleGuard& guard = {});

}  // namespace submeta
