#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "submeta/bruteforce/fixtures.hpp"
#include "submeta/estimation/marginals.hpp"
#include "submeta/policies/two_phase.hpp"
#include "submeta/errors.hpp"

using namespace submeta;
using test::approx_equal;

namespace {

PartialRealization psi_of(std::vector<std::pair<ItemId, StateValue>> entries) {
    PartialRealization psi;
    for (auto [item, state] : entries) psi.observe(item, state);
    return psi;
}

}  // namespace

TEST_CASE("exact conditional item marginals") {
    auto [tasks, prior] = remark2_instance();

    SUBCASE("task 1, psi = {item 1}, marginal of item 0 is 1") {
        auto est = marginal_item_exact(*tasks[1], prior, psi_of({{1, 0}}), 0);
        CHECK(approx_equal(est.mean, 1.0));
        CHECK(est.stderr_ == 0.0);
    }

    SUBCASE("dummy items have marginal exactly 0") {
        CHECK(marginal_item_exact(*tasks[1], prior, {}, 2).mean == 0.0);
        CHECK(marginal_item_exact(*tasks[1], prior, psi_of({{0, 0}}), 5).mean == 0.0);
    }

    SUBCASE("items already in dom(psi) have marginal 0") {
        CHECK(marginal_item_exact(*tasks[1], prior, psi_of({{0, 0}}), 0).mean == 0.0);
    }
}

TEST_CASE("Monte Carlo item marginals") {
    auto [tasks, prior] = remark2_instance();

    SUBCASE("degenerate prior gives the exact value with zero stderr") {
        auto est = marginal_item_mc(*tasks[1], prior, psi_of({{1, 0}}), 0, 64, 5);
        CHECK(approx_equal(est.mean, 1.0));
        CHECK(est.stderr_ == 0.0);
        CHECK(est.samples_used == 64);
    }

    SUBCASE("generative encoding of the deterministic fixture") {
        Prior generative = test::as_generative(prior);
        auto est = marginal_item_mc(*tasks[1], generative, psi_of({{1, 0}}), 0, 100, 17);
        CHECK(approx_equal(est.mean, 1.0));
        CHECK(est.stderr_ == 0.0);
    }

    SUBCASE("large-sample estimate agrees with the exact oracle") {
        test::CoverageFixture fixture;
        auto task = fixture.task();
        Prior cov_prior = fixture.prior();
        auto psi = psi_of({{1, 1}});
        double exact = marginal_item_exact(*task, cov_prior, psi, 0).mean;
        auto mc = marginal_item_mc(*task, cov_prior, psi, 0, 100000, 23);
        CHECK(std::fabs(mc.mean - exact) <= 3.0 * mc.stderr_ + 1e-12);
        CHECK(mc.stderr_ > 0.0);
    }

    SUBCASE("99% intervals cover the exact value in at least 45 of 50 runs") {
        test::CoverageFixture fixture;
        auto task = fixture.task();
        Prior cov_prior = fixture.prior();
        auto psi = psi_of({{2, 0}});
        double exact = marginal_item_exact(*task, cov_prior, psi, 1).mean;
        int covered = 0;
        for (int rep = 0; rep < 50; ++rep) {
            auto mc = marginal_item_mc(*task, cov_prior, psi, 1, 4000, 1000 + rep);
            if (std::fabs(mc.mean - exact) <= 2.5758 * mc.stderr_) ++covered;
        }
        CHECK(covered >= 45);
    }
}

TEST_CASE("task-average set marginal (the training surrogate)") {
    auto [tasks, prior] = remark2_instance();

    SUBCASE("both items average 1/2 at the empty set") {
        CHECK(approx_equal(marginal_set_avg(tasks, prior, {}, 0), 0.5));
        // Symmetric by the stated utilities.
        CHECK(approx_equal(marginal_set_avg(tasks, prior, {}, 1), 0.5));
    }

    SUBCASE("dummies contribute 0") {
        CHECK(marginal_set_avg(tasks, prior, {}, 3) == 0.0);
    }

    SUBCASE("empty task list throws") {
        CHECK_THROWS_AS(marginal_set_avg({}, prior, {}, 0), EmptyTaskSet);
    }

    SUBCASE("Monte Carlo variant tracks the exact value") {
        test::CoverageFixture fixture;
        std::vector<TaskPtr> cov_tasks{fixture.task(0), fixture.task(1)};
        Prior cov_prior = fixture.prior();
        double exact = marginal_set_avg(cov_tasks, cov_prior, {2}, 0);
        auto mc = marginal_set_avg_mc(cov_tasks, test::as_generative(cov_prior), {2}, 0, 60000, 3);
        CHECK(std::fabs(mc.mean - exact) <= 4.0 * mc.stderr_ + 1e-12);
    }
}

TEST_CASE("policy marginals") {
    auto [tasks, prior] = remark2_instance();

    SUBCASE("the empty policy contributes nothing") {
        FixedSetPolicy empty(2, 0, {});
        CHECK(approx_equal(marginal_policy(*tasks[1], prior, {1}, empty).mean, 0.0));
    }

    SUBCASE("conditioning on the empty set collapses to f_avg - f(empty)") {
        FixedSetPolicy pol(2, 1, {0});
        double expected = expected_utility_exact(pol, *tasks[1], prior) -
                          tasks[1]->utility({}, prior.support()[0].realization);
        CHECK(approx_equal(marginal_policy(*tasks[1], prior, {}, pol).mean, expected));
    }

    SUBCASE("policy selecting item 0 on top of {1} adds 1 on task 1") {
        FixedSetPolicy pol(2, 1, {0});
        CHECK(approx_equal(marginal_policy(*tasks[1], prior, {1}, pol).mean, 1.0));
    }

    SUBCASE("linearity: a deterministic set policy matches the direct expectation") {
        test::CoverageFixture fixture;
        auto task = fixture.task();
        Prior cov_prior = fixture.prior();
        FixedSetPolicy pol(3, 2, {0, 2});
        ItemSet y{1};
        double direct = 0.0;
        for (const auto& [phi, prob] : cov_prior.support())
            direct += prob * (task->utility({0, 1, 2}, phi) - task->utility(y, phi));
        CHECK(approx_equal(marginal_policy(*task, cov_prior, y, pol).mean, direct));
    }
}

TEST_CASE("common-random-number round marginals match per-item exact values") {
    test::CoverageFixture fixture;
    auto task = fixture.task();
    Prior prior = fixture.prior();
    auto psi = psi_of({{0, 1}});
    std::vector<ItemId> candidates{1, 2, 5};  // includes a dummy

    EstimatorConfig exact_cfg;
    exact_cfg.mode = EstimatorConfig::Mode::exact;
    auto exact = conditional_marginals(*task, prior, psi, candidates, 3, exact_cfg, 1);
    CHECK(approx_equal(exact[0], marginal_item_exact(*task, prior, psi, 1).mean));
    CHECK(approx_equal(exact[1], marginal_item_exact(*task, prior, psi, 2).mean));
    CHECK(exact[2] == 0.0);

    EstimatorConfig mc_cfg;
    mc_cfg.mode = EstimatorConfig::Mode::monte_carlo;
    mc_cfg.mc_samples = 60000;
    mc_cfg.seed = 9;
    auto mc = conditional_marginals(*task, prior, psi, candidates, 3, mc_cfg, 1);
    CHECK(std::fabs(mc[0] - exact[0]) < 0.05);
    CHECK(std::fabs(mc[1] - exact[1]) < 0.05);
    CHECK(mc[2] == 0.0);
}
