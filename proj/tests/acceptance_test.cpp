// Acceptance suite: every headline number and invariant the project promises,
// with the stated tolerances and runtime limits. Prints one line per
// criterion so a failed run is readable at a glance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "testsched/algorithms.hpp"
#include "testsched/analysis.hpp"
#include "testsched/bounds.hpp"
#include "testsched/decomposition.hpp"
#include "testsched/families.hpp"

#include "test_util.hpp"

using namespace testsched;
using test_util::approx_rel;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point begin = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    }
};

void report(int criterion, const char* what, bool pass) {
    std::printf("criterion %d (%s): %s\n", criterion, what, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
}

} // namespace

TEST_CASE("criterion 1: priority-scheduler bound reproduction") {
    const Stopwatch clock;
    const Theorem1Optimum opt = minimize_theorem1();
    const double elapsed = clock.seconds();
    const bool pass = std::abs(opt.mu0 - 6.16277) <= 1e-4 &&
                      std::abs(opt.nu0 - 0.860389) <= 1e-5 &&
                      std::abs(opt.rho - 1.86039) <= 1e-4 && elapsed < 1.0;
    report(1, "mu0/nu0/rho reproduction under 1s", pass);
    CHECK(std::abs(opt.mu0 - 6.16277) <= 1e-4);
    CHECK(std::abs(opt.nu0 - 0.860389) <= 1e-5);
    CHECK(std::abs(opt.rho - 1.86039) <= 1e-4);
    CHECK(elapsed < 1.0);
}

TEST_CASE("criterion 2: threshold-scheduler bound reproduction") {
    const Stopwatch clock;
    const SidleOptimum opt = optimize_sidle();
    const SidleBound bound = sidle_ratio_bound(opt.y0);
    const double elapsed = clock.seconds();
    const bool pass = std::abs(opt.y0 - 1.35542) <= 1e-3 &&
                      std::abs(opt.rho0 - 1.58451) <= 1e-3 &&
                      std::abs(bound.alpha - 0.644584) <= 1e-2 &&
                      std::abs(bound.gamma - 0.737781) <= 1e-2 && elapsed < 5.0;
    report(2, "y0/rho0 and worst alpha/gamma under 5s", pass);
    CHECK(std::abs(opt.y0 - 1.35542) <= 1e-3);
    CHECK(std::abs(opt.rho0 - 1.58451) <= 1e-3);
    CHECK(std::abs(bound.alpha - 0.644584) <= 1e-2);
    CHECK(std::abs(bound.gamma - 0.737781) <= 1e-2);
    CHECK(elapsed < 5.0);
}

TEST_CASE("criterion 3: lower-bound family at beta = 1 plus closed forms") {
    const Stopwatch clock;
    const BetaSortLowerBound at_one = betasort_lower_bound(1.0);
    const RatioResult measured = family_ratio_check(
        families::BetaLbSmall{1.0, 10000, at_one.gamma, 1.0, 1e-6},
        AlgorithmSpec{AlgorithmKind::BetaSort, 1.0, 1.0});
    const double elapsed = clock.seconds();
    const bool closed_forms = std::abs(betasort_lower_bound(0.5).ratio - 2.000) <= 1e-3 &&
                              std::abs(betasort_lower_bound(2.0).ratio - 1.851) <= 1e-3;
    const bool pass =
        std::abs(measured.ratio - 1.6180) <= 1e-2 && closed_forms && elapsed < 10.0;
    report(3, "measured 1.618 at n=10^4 and closed forms", pass);
    CHECK(std::abs(measured.ratio - 1.6180) <= 1e-2);
    CHECK(closed_forms);
    CHECK(elapsed < 10.0);
}

TEST_CASE("criterion 4: adaptive adversary reaches sqrt(2)") {
    const Stopwatch clock;
    const RatioResult r = adversary_run(AlgorithmSpec{AlgorithmKind::ImmediateInOrder, 1.0, 1.0},
                                        10000, std::numbers::sqrt2 - 1);
    const double elapsed = clock.seconds();
    const bool pass = std::abs(r.ratio - std::numbers::sqrt2) <= 5e-3 && elapsed < 5.0;
    report(4, "immediate scheduler vs adversary at n=10^4", pass);
    CHECK(std::abs(r.ratio - std::numbers::sqrt2) <= 5e-3);
    CHECK(elapsed < 5.0);
}

TEST_CASE("criterion 5: golden ratios of the fixed families") {
    const AlgorithmSpec one_sort{AlgorithmKind::BetaSort, 1.0, 1.0};
    const RatioResult fig1 = family_ratio_check(families::Fig1{1.0, 1e-6}, one_sort);
    const RatioResult fig2 = family_ratio_check(families::Fig2{100, 1.0, 1e-6}, one_sort);
    const bool pass =
        std::abs(fig1.ratio - 1.25) <= 1e-4 && std::abs(fig2.ratio - 1.6) <= 2e-2;
    report(5, "two-job pair at 1.25 and two-block at 1.6", pass);
    CHECK(std::abs(fig1.ratio - 1.25) <= 1e-4);
    CHECK(std::abs(fig2.ratio - 1.6) <= 2e-2);
}

TEST_CASE("criterion 6: threshold scheduler is tight on its worst family") {
    const SidleOptimum opt = optimize_sidle();
    const RatioResult r = family_ratio_check(
        families::SidleTight{10000, opt.y0, opt.alpha, opt.gamma, 1e-6},
        AlgorithmSpec{AlgorithmKind::Sidle, 1.0, opt.y0});
    const bool pass = std::abs(r.ratio - 1.58451) <= 1e-2;
    report(6, "measured tight ratio 1.58451 at n=10^4", pass);
    CHECK(std::abs(r.ratio - 1.58451) <= 1e-2);
}

TEST_CASE("criterion 7: property suite") {
    const Theorem1Optimum one_sort_opt = minimize_theorem1();
    const SidleOptimum sidle_opt = optimize_sidle();
    const AnalysisParams params{one_sort_opt.mu0, one_sort_opt.nu0};
    const AlgorithmSpec one_sort{AlgorithmKind::BetaSort, 1.0, 1.0};
    std::mt19937_64 rng(0xACCE97);

    // decomposition identity, universal 2-bound and the measured ratio cap
    // share one campaign of 1000 random instances
    bool identity_ok = true, two_bound_ok = true;
    double worst_one_sort_ratio = 0;
    for (int round = 0; round < 1000; ++round) {
        const Instance inst = test_util::random_instance(rng, 2 + round % 49);
        const Schedule s = beta_sort(inst, 1.0);
        const double obj = objective(s);
        const DelayDecomposition dec = decompose(s, inst);
        identity_ok =
            identity_ok && approx_rel(dec.total_size() + dec.total_pair_delay(), obj, 1e-9);
        for (JobId a = 0; a < inst.size() && two_bound_ok; ++a)
            for (JobId b = a + 1; b < inst.size(); ++b)
                if (dec.pair_delay(a, b) > 2 * dec.opt_pair_delay(a, b) + 1e-9) {
                    two_bound_ok = false;
                    break;
                }
        const double opt = optimal_objective(inst);
        if (opt > 0) worst_one_sort_ratio = std::max(worst_one_sort_ratio, obj / opt);
    }
    report(7, "decomposition identity on 1000 instances", identity_ok);
    report(7, "pair delays within twice the optimum", two_bound_ok);
    CHECK(identity_ok);
    CHECK(two_bound_ok);

    // brute-force optimality of the shortest-size-first schedule
    bool brute_ok = true;
    for (int round = 0; round < 200; ++round) {
        const Instance inst = test_util::random_instance(rng, 1 + round % 8);
        brute_ok = brute_ok && approx_rel(optimal_schedule(inst).second,
                                          test_util::brute_force_best_order(inst), 1e-9);
    }
    report(7, "optimum matches the permutation oracle", brute_ok);
    CHECK(brute_ok);

    // lemma bounds and charging at the tuned parameters: random mixtures
    // plus the two-block instances
    bool lemmas_ok = true, charging_ok = true;
    for (int round = 0; round < 1000; ++round) {
        families::RandomMixture mix;
        mix.n = 3 + round % 10;
        mix.seed = 0xC0FFEE + 31337u * static_cast<std::uint64_t>(round);
        mix.mu = params.mu;
        mix.nu = params.nu;
        const Instance inst = families::generate(mix);
        lemmas_ok = lemmas_ok && verify_lemma_bounds(inst, params).ok();
        const ChargingReport charge = charging(inst, params);
        charging_ok = charging_ok && charge.ok();
        const double opt = optimal_objective(inst);
        if (opt > 0)
            worst_one_sort_ratio =
                std::max(worst_one_sort_ratio, objective(beta_sort(inst, 1.0)) / opt);
    }
    for (std::size_t k : {2, 10, 50}) {
        const Instance inst = families::generate(families::Fig2{k, 1.0, 1e-6});
        lemmas_ok = lemmas_ok && verify_lemma_bounds(inst, params).ok();
        charging_ok = charging_ok && charging(inst, params).ok();
    }
    report(7, "lemma bounds hold with zero violations", lemmas_ok);
    report(7, "charging construction and its invariant hold", charging_ok);
    CHECK(lemmas_ok);
    CHECK(charging_ok);

    // measured ratios never exceed the proven bounds
    for (const families::Family& fam :
         {families::Family(families::Fig1{1.0, 1e-6}), families::Family(families::Fig2{100, 1.0, 1e-6}),
          families::Family(families::BetaLbSmall{1.0, 5000, betasort_lower_bound(1.0).gamma, 1.0,
                                                 1e-6})}) {
        worst_one_sort_ratio =
            std::max(worst_one_sort_ratio, family_ratio_check(fam, one_sort).ratio);
    }
    const bool one_sort_cap = worst_one_sort_ratio <= 1.86039 + 1e-6;
    report(7, "measured priority-scheduler ratio below 1.86039", one_sort_cap);
    CHECK(one_sort_cap);

    double worst_sidle_ratio = 0;
    const AlgorithmSpec sidle_alg{AlgorithmKind::Sidle, 1.0, sidle_opt.y0};
    for (int round = 0; round < 300; ++round) {
        const Instance inst = test_util::random_unit_test_instance(rng, 1 + round % 40);
        worst_sidle_ratio = std::max(worst_sidle_ratio, ratio_check(inst, sidle_alg).ratio);
    }
    worst_sidle_ratio = std::max(
        worst_sidle_ratio,
        family_ratio_check(families::SidleTight{10000, sidle_opt.y0, sidle_opt.alpha,
                                                sidle_opt.gamma, 1e-6},
                           sidle_alg)
            .ratio);
    const bool sidle_cap = worst_sidle_ratio <= 1.58451 + 1e-6;
    report(7, "measured threshold-scheduler ratio below 1.58451", sidle_cap);
    CHECK(sidle_cap);

    // preemptive equal-rate baseline against its exact bound
    bool rr_ok = true;
    for (int round = 0; round < 200; ++round) {
        const Instance inst = test_util::random_instance(rng, 1 + round % 200);
        const double n = static_cast<double>(inst.size());
        const double bound = (2 - 2 / (n + 1)) * optimal_objective(inst);
        rr_ok = rr_ok && round_robin_objective(inst) <= bound + 1e-9 * std::max(1.0, bound);
    }
    report(7, "equal-rate baseline within 2 - 2/(n+1)", rr_ok);
    CHECK(rr_ok);
}
