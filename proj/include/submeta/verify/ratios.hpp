#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace submeta {

/// Which policy/bound pair a verification run exercises.
enum class Regime {
    monotone,      // two-phase greedy vs 1/2
    nonmonotone,   // two-phase randomized greedy vs (1/2)(1-1/l)^l (1-1/(k-l))^(k-l)
    kl1,           // k-l = 1 mixture vs 1/(1+e)
    l1,            // l = 1 mixture vs 1/(2e)
};

Regime regime_from_string(const std::string& name);
std::string regime_to_string(Regime regime);

struct RatioCase {
    std::uint64_t instance_seed = 0;
    int n = 0;
    int m = 0;
    int l = 0;
    int k = 0;
    double policy_value = 0.0;
    double optimum = 0.0;
    double ratio = 1.0;
    double bound = 0.0;
    bool violated = false;
};

struct RatioReport {
    Regime regime = Regime::monotone;
    std::uint64_t seed = 0;
    long violations = 0;
    double min_ratio = 1.0;
    double mean_ratio = 1.0;
    std::vector<RatioCase> cases;

    std::string to_json() const;
    std::string summary() const;
};

/// Generates `count` guarded random instances for the regime (validated by
/// the exhaustive submodularity checker before use), evaluates the
/// regime's policy exactly (enumerating every policy branch), computes the
/// brute-force two-phase optimum, and reports every ratio against the
/// regime's bound. Violations beyond 1e-9 are counted.
RatioReport verify_ratios(Regime regime, long count, std::uint64_t seed);

}  // namespace submeta
