#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "helpers.hpp"
#include "submeta/bruteforce/checks.hpp"
#include "submeta/bruteforce/fixtures.hpp"
#include "submeta/bruteforce/oracle.hpp"
#include "submeta/core/evaluate.hpp"
#include "submeta/errors.hpp"
#include "submeta/estimation/marginals.hpp"
#include "submeta/gen/instances.hpp"
#include "submeta/policies/two_phase.hpp"

using namespace submeta;
using test::approx_equal;

namespace {

PartialRealization psi_of(std::vector<std::pair<ItemId, StateValue>> entries) {
    PartialRealization psi;
    for (auto [item, state] : entries) psi.observe(item, state);
    return psi;
}

}  // namespace

TEST_CASE("optimal adaptive continuation") {
    test::CoverageFixture fixture;
    auto task = fixture.task();
    Prior prior = fixture.prior();

    SUBCASE("budget 0 is the conditional expected value of the domain") {
        auto psi = psi_of({{0, 1}});
        double expected = 0.0;
        Prior conditioned = conditional_prior(prior, psi);
        for (const auto& [phi, prob] : conditioned.support())
            expected += prob * task->utility({0}, phi);
        CHECK(approx_equal(optimal_continuation(*task, prior, psi, 0), expected));
    }

    SUBCASE("deterministic states reduce to exhaustive set search") {
        auto weights = std::vector<double>{2.0, 5.0, 1.0, 3.0};
        auto modular = test::modular_task(0, weights);
        Prior det = test::deterministic_prior(4);
        for (int budget = 0; budget <= 3; ++budget) {
            // Oracle: enumerate every superset of the empty set of size <= budget.
            double best = 0.0;
            for (std::uint32_t mask = 0; mask < 16; ++mask) {
                if (std::popcount(mask) > budget) continue;
                ItemSet set;
                for (int e = 0; e < 4; ++e)
                    if (mask & (1u << e)) set.push_back(e);
                best = std::max(best, modular->utility(set, det.support()[0].realization));
            }
            CHECK(approx_equal(optimal_continuation(*modular, det, {}, budget), best));
        }
    }

    SUBCASE("budget 1 is a one-step Bellman update") {
        auto psi = psi_of({{1, 0}});
        double stop = optimal_continuation(*task, prior, psi, 0);
        double best = stop;
        for (ItemId e = 0; e < 3; ++e) {
            if (psi.contains(e)) continue;
            best = std::max(best, stop + marginal_item_exact(*task, prior, psi, e).mean);
        }
        CHECK(approx_equal(optimal_continuation(*task, prior, psi, 1), best));
    }

    SUBCASE("Bellman consistency at every reachable state") {
        for (int budget = 1; budget <= 2; ++budget) {
            for (const auto& [phi, prob] : prior.support()) {
                PartialRealization psi;
                psi.observe(0, phi.states[0]);
                double value = optimal_continuation(*task, prior, psi, budget);
                // max over stopping and every (item, state branch) expansion
                double best = optimal_continuation(*task, prior, psi, 0);
                for (ItemId e = 1; e < 3; ++e) {
                    Prior conditioned = conditional_prior(prior, psi);
                    std::map<StateValue, double> state_probs;
                    for (const auto& [phi2, prob2] : conditioned.support())
                        state_probs[phi2.states[static_cast<std::size_t>(e)]] += prob2;
                    double expansion = 0.0;
                    for (const auto& [state, sp] : state_probs) {
                        PartialRealization next = psi;
                        next.observe(e, state);
                        expansion += sp * optimal_continuation(*task, prior, next, budget - 1);
                    }
                    best = std::max(best, expansion);
                }
                CHECK(approx_equal(value, best));
            }
        }
    }

    SUBCASE("guards are hard errors") {
        Prior big = test::deterministic_prior(7);
        auto modular = test::modular_task(0, std::vector<double>(7, 1.0));
        CHECK_THROWS_AS(optimal_continuation(*modular, big, {}, 1), TooLarge);
        CHECK_THROWS_AS(optimal_continuation(*task, prior, {}, 5), TooLarge);
    }
}

TEST_CASE("optimal two-phase value") {
    auto [tasks, prior] = remark2_instance();

    SUBCASE("two-item fixture, l = 1, k = 2: optimum is 1") {
        auto opt = optimal_two_phase(tasks, prior, 1, 2);
        CHECK(approx_equal(opt.value, 1.0));
        CHECK(opt.initial_set.size() == 1);
    }

    SUBCASE("l = k is the best fixed set") {
        test::CoverageFixture fixture;
        auto task = fixture.task();
        Prior cov_prior = fixture.prior();
        // Oracle: enumerate all size-2 sets directly.
        double best = 0.0;
        for (ItemId a = 0; a < 3; ++a)
            for (ItemId b = a + 1; b < 3; ++b)
                best = std::max(best, expected_set_utility(*task, cov_prior, {a, b}));
        auto opt = optimal_two_phase({task}, cov_prior, 2, 2);
        CHECK(approx_equal(opt.value, best));
    }

    SUBCASE("l = k = 1 is the best average singleton") {
        auto opt = optimal_two_phase(tasks, prior, 1, 1);
        CHECK(approx_equal(opt.value, 0.5));
    }

    SUBCASE("oracle dominance over implemented policies") {
        test::CoverageFixture fixture;
        std::vector<TaskPtr> cov_tasks{fixture.task(0)};
        Prior cov_prior = fixture.prior();
        auto opt = optimal_two_phase(cov_tasks, cov_prior, 1, 2);
        auto greedy_initial = tgp_train(cov_tasks, cov_prior, 1);
        auto pol = tgp_policy(greedy_initial, 3, 2, cov_prior);
        CHECK(f_avg(*pol, cov_tasks, cov_prior).mean <= opt.value + 1e-9);
    }
}

TEST_CASE("adaptive submodularity checker") {
    SUBCASE("modular utility with independent states holds") {
        auto modular = test::modular_task(0, {1.0, 2.0, 3.0});
        Prior prior = test::bernoulli_prior({0.4, 0.5, 0.6});
        CHECK(check_adaptive_submodularity(*modular, prior).holds);
    }

    SUBCASE("coverage fixture holds") {
        test::CoverageFixture fixture;
        auto task = fixture.task();
        CHECK(check_adaptive_submodularity(*task, fixture.prior()).holds);
    }

    SUBCASE("the pooled training objective of the two-item fixture violates with (1/2, 1)") {
        auto [tasks, prior] = remark2_instance();
        auto [pooled, pooled_prior] = pooled_objective(tasks, prior);
        auto report = check_adaptive_submodularity(*pooled, pooled_prior);
        CHECK_FALSE(report.holds);
        REQUIRE_FALSE(report.violations.empty());
        bool found = false;
        for (const auto& v : report.violations) {
            CHECK(approx_equal(v.delta_psi, 0.5));
            CHECK(approx_equal(v.delta_psi_prime, 1.0));
            if (approx_equal(v.delta_psi, 0.5) && approx_equal(v.delta_psi_prime, 1.0)) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("adaptive monotonicity checker") {
    SUBCASE("coverage utility holds") {
        test::CoverageFixture fixture;
        auto task = fixture.task();
        CHECK(check_adaptive_monotonicity(*task, fixture.prior()).holds);
    }

    SUBCASE("a penalized pair is reported") {
        // f({0}) = 2, f({1}) = 2, f({0,1}) = 1: adding the second item hurts.
        auto fn = [](const ItemSet& items, const Realization&) {
            if (items.size() == 2) return 1.0;
            return items.empty() ? 0.0 : 2.0;
        };
        auto task = std::make_shared<CallbackTask>(0, false, true, fn);
        Prior prior = test::deterministic_prior(2);
        auto report = check_adaptive_monotonicity(*task, prior);
        CHECK_FALSE(report.holds);
        CHECK_FALSE(report.violations.empty());
    }

    SUBCASE("the remark-2 single tasks are monotone and submodular") {
        auto [tasks, prior] = remark2_instance();
        for (const auto& task : tasks) {
            CHECK(check_adaptive_monotonicity(*task, prior).holds);
            CHECK(check_adaptive_submodularity(*task, prior).holds);
        }
    }
}

TEST_CASE("two-item fixture values match the stated utilities") {
    auto [tasks, prior] = remark2_instance();
    Realization phi = prior.support()[0].realization;
    CHECK(approx_equal(tasks[1]->utility({0, 1}, phi), 2.0));
    CHECK(approx_equal(tasks[0]->utility({0}, phi), 0.0));
    CHECK(approx_equal(marginal_set_avg(tasks, prior, {}, 0), 0.5));
}

TEST_CASE("generated instances satisfy their declared structure") {
    SUBCASE("monotone family") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto inst = random_monotone_instance(seed);
            for (const auto& task : inst.tasks) {
                CHECK(check_adaptive_submodularity(*task, inst.prior).holds);
                CHECK(check_adaptive_monotonicity(*task, inst.prior).holds);
            }
        }
    }

    SUBCASE("non-monotone family stays adaptive submodular") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto inst = random_nonmonotone_instance(seed);
            for (const auto& task : inst.tasks)
                CHECK(check_adaptive_submodularity(*task, inst.prior).holds);
        }
    }
}
