#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "testsched/analysis.hpp"
#include "testsched/bounds.hpp"
#include "testsched/families.hpp"

#include "test_util.hpp"

using namespace testsched;
using test_util::approx_rel;

namespace {

AnalysisParams tuned_params() {
    return AnalysisParams{6.162766616885753, 0.8603891410279143};
}

Instance fig2_instance(std::size_t k, double eps) {
    return families::generate(families::Fig2{k, 1.0, eps});
}

// Five-cluster instance wired so that one arc is consumed in both roles:
// ids 0 x, 1 s, 2 s2, 3 i, 4 j, 5 k, 6 y. Red arcs: s->i, s->j, s2->i,
// s2->j, i->k, j->k and x->y. The arc {i, j} is charged as a green arc in
// j's group and as a blue arc in k's group, so it must be split.
Instance special_arc_instance() {
    return Instance::from_pairs({
        {0.005, 50},  // x
        {0.01, 100},  // s
        {0.02, 101},  // s2
        {88, 900},    // i
        {95, 1000},   // j
        {880, 800},   // k
        {44, 40},     // y
    });
}

} // namespace

TEST_CASE("analysis parameter constraints") {
    CHECK_NOTHROW(tuned_params().validate());
    CHECK_THROWS_AS((AnalysisParams{0.9, 0.9}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((AnalysisParams{6.0, 0.15}).validate(), std::invalid_argument); // mu <= 1/nu
    CHECK_THROWS_AS((AnalysisParams{1.2, 0.9}).validate(), std::invalid_argument);  // 1+1/mu too big
    CHECK_THROWS_AS((AnalysisParams{6.0, 1.0}).validate(), std::invalid_argument);
}

TEST_CASE("classify marks the near-tie pair red") {
    const Instance inst = Instance::from_pairs({{0, 10}, {9.5, 10.5}});
    const ArcClassification cls = classify(inst, tuned_params());
    CHECK(cls.imbalanced[0]);
    CHECK_FALSE(cls.imbalanced[1]);
    CHECK(cls.is_red(0, 1));
    CHECK(cls.red_arc_count() == 1);
    REQUIRE(cls.red_vertices.size() == 1);
    CHECK(cls.red_vertices[0] == 1);
}

TEST_CASE("classify finds no red arcs without imbalance or without the window") {
    const Instance balanced = Instance::from_pairs({{1, 1}, {2, 2}});
    CHECK(classify(balanced, tuned_params()).red_arc_count() == 0);

    // head test time above the tail's longest operation
    const Instance off_window = Instance::from_pairs({{0, 1}, {5, 6}});
    CHECK(classify(off_window, tuned_params()).red_arc_count() == 0);
}

TEST_CASE("lemma bounds on the two-block instance") {
    const LemmaReport report = verify_lemma_bounds(fig2_instance(10, 1e-6), tuned_params());
    CHECK(report.ok());
    const CheckStat* red = report.find("red-arc-ratio");
    REQUIRE(red != nullptr);
    CHECK(red->checked == 100);
    CHECK(red->worst_ratio > 1.99);
    const CheckStat* blue = report.find("blue-arc");
    REQUIRE(blue != nullptr);
    CHECK(blue->checked > 0);
    CHECK(std::abs(blue->worst_ratio - 1.0) < 0.01);
    const CheckStat* green = report.find("green-arc");
    REQUIRE(green != nullptr);
    CHECK(green->checked > 0);
    CHECK(std::abs(green->worst_ratio - 1.5) < 0.01);
}

TEST_CASE("lemma bounds when no job is imbalanced") {
    const Instance inst =
        Instance::from_pairs({{1, 2}, {2, 3}, {3, 1}, {1.5, 2.5}, {2.5, 1.5}});
    const AnalysisParams params = tuned_params();
    const LemmaReport report = verify_lemma_bounds(inst, params);
    CHECK(report.ok());
    CHECK(report.find("red-arc-ratio")->checked == 0);
    const CheckStat* nonred = report.find("nonred-arc-ratio");
    CHECK(nonred->checked == 10);
    CHECK(nonred->worst_ratio <= (2 * params.mu + 1) / (params.mu + 1) + 1e-9);
}

TEST_CASE("lemma bounds on random mixtures") {
    const AnalysisParams params = tuned_params();
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        families::RandomMixture mix;
        mix.n = 3 + seed % 10;
        mix.seed = 0xABCD + seed * 7919;
        const LemmaReport report = verify_lemma_bounds(families::generate(mix), params);
        if (!report.ok()) {
            for (const CheckStat& c : report.checks)
                for (const std::string& d : c.details) MESSAGE(c.name, ": ", d);
        }
        CHECK(report.ok());
    }
}

TEST_CASE("charging on the two-block instances") {
    for (std::size_t k : {2, 10, 50}) {
        const ChargingReport report = charging(fig2_instance(k, 1e-6), tuned_params());
        for (const std::string& v : report.violations) MESSAGE(v);
        CHECK(report.ok());
        CHECK(report.groups.size() == k);
        CHECK(report.split_arcs == 0);
        CHECK(report.invariant_checks > 0);
        for (const ChargeGroup& g : report.groups) CHECK(g.ratio <= report.rho_charging + 1e-9);
        if (k == 50) {
            // first half of the heads needs blue arcs, the rest rides on greens
            CHECK(report.groups.front().construction_case == 2);
            CHECK(report.groups.back().construction_case == 1);
            CHECK(report.blue_arcs_used == 325);
        }
    }
}

TEST_CASE("charging with no red arcs") {
    const Instance inst = Instance::from_pairs({{1, 2}, {2, 3}, {3, 1}});
    const ChargingReport report = charging(inst, tuned_params());
    CHECK(report.ok());
    CHECK(report.groups.empty());
    CHECK(report.leftover_arcs == 3);
    CHECK(report.leftover_vertices == 3);
    CHECK(report.overall_ratio <= report.rho_nonred + 1e-9);
}

TEST_CASE("charging with a single red arc uses the tighter vertex bound") {
    const Instance inst = Instance::from_pairs({{0.005, 50}, {44, 40}});
    const AnalysisParams params = tuned_params();
    const ChargingReport report = charging(inst, params);
    CHECK(report.ok());
    REQUIRE(report.groups.size() == 1);
    const ChargeGroup& g = report.groups[0];
    CHECK(g.construction_case == 0);
    CHECK(g.bound == params.rho_single_red());
    CHECK(approx_rel(g.ratio, 168.005 / 134.005));
}

TEST_CASE("charging splits an arc consumed in both roles") {
    const Instance inst = special_arc_instance();
    const AnalysisParams params = tuned_params();

    const ArcClassification cls = classify(inst, params);
    CHECK(cls.red_arc_count() == 7);
    CHECK(cls.red_vertices == std::vector<JobId>{6, 3, 4, 5});
    CHECK(cls.red_tails[3] == std::vector<JobId>{1, 2});
    CHECK(cls.red_tails[4] == std::vector<JobId>{1, 2});
    CHECK(cls.red_tails[5] == std::vector<JobId>{3, 4});
    CHECK(cls.red_tails[6] == std::vector<JobId>{0});
    CHECK(cls.green_partners[4] == std::vector<JobId>{3});
    CHECK(cls.green_partners[5].empty());

    const LemmaReport lemmas = verify_lemma_bounds(inst, params);
    CHECK(lemmas.ok());
    CHECK(lemmas.find("dual-role-arc")->checked == 1);

    const ChargingReport report = charging(inst, params);
    for (const std::string& v : report.violations) MESSAGE(v);
    CHECK(report.ok());
    REQUIRE(report.groups.size() == 4);
    CHECK(report.split_arcs == 1);
    CHECK(report.blue_arcs_used == 2);

    const ChargeGroup& gy = report.groups[0];
    CHECK(gy.vertex == 6);
    CHECK(gy.construction_case == 0);

    const ChargeGroup& gi = report.groups[1];
    CHECK(gi.vertex == 3);
    CHECK(gi.construction_case == 2);
    REQUIRE(gi.blues.size() == 1);
    CHECK(gi.blues[0].a == 1);
    CHECK(gi.blues[0].b == 2);
    CHECK_FALSE(gi.blues[0].split);

    const ChargeGroup& gj = report.groups[2];
    CHECK(gj.vertex == 4);
    CHECK(gj.construction_case == 1);
    REQUIRE(gj.greens.size() == 1);
    CHECK(gj.greens[0].split);
    CHECK(approx_rel(gj.greens[0].opt_delay, 88.0)); // sigma_i - min(p_i, p_j)

    const ChargeGroup& gk = report.groups[3];
    CHECK(gk.vertex == 5);
    CHECK(gk.construction_case == 2);
    REQUIRE(gk.blues.size() == 1);
    CHECK(gk.blues[0].split);
    CHECK(approx_rel(gk.blues[0].opt_delay, 900.0)); // min(p_i, p_j)
    // both parts of the split arc carry the whole arc's ratio
    CHECK(approx_rel(gk.blues[0].delay / gk.blues[0].opt_delay,
                     gj.greens[0].delay / gj.greens[0].opt_delay));
}

TEST_CASE("charging on random mixtures") {
    const AnalysisParams params = tuned_params();
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        families::RandomMixture mix;
        mix.n = 3 + seed % 10;
        mix.seed = 0xBEEF + seed * 104729;
        const ChargingReport report = charging(families::generate(mix), params);
        for (const std::string& v : report.violations) MESSAGE("seed ", seed, ": ", v);
        CHECK(report.ok());
        CHECK(report.overall_ratio <=
              std::max(report.rho_charging, report.rho_nonred) + 1e-9);
    }
}

TEST_CASE("nine-term bound at the tuned parameters") {
    const AnalysisParams params = tuned_params();
    const double rho = theorem1_rho(params);
    CHECK(std::abs(rho - 1.86039) < 1e-4);
    // the binding term is (2mu+1)/(mu+1)
    CHECK(std::abs(rho - (2 * params.mu + 1) / (params.mu + 1)) < 1e-6);
}

TEST_CASE("nine-term bound cross-checked term by term") {
    const double mu = 7.0, nu = 0.86;
    const AnalysisParams params{mu, nu};
    // group forms of the three composite terms
    const double x = 1 / nu + 1 / (mu * nu);
    const double q = nu + nu * nu;
    const double composite_green = (4 * x + params.rho_green() * q) / (2 * x + q);
    const double composite_special = (4 * x + params.rho_special() * nu) / (2 * x + nu);
    const double composite_blue = (4 * x + params.rho_blue()) / (2 * x + 1);
    const double expected = std::max({
        params.rho_single_red(),
        1 + 1 / (2 + nu),
        composite_green,
        composite_special,
        composite_blue,
        params.rho_green(),
        params.rho_special(),
        (2 * mu + 1) / (mu + 1),
        1 + nu,
    });
    CHECK(approx_rel(theorem1_rho(params), expected, 1e-12));
    CHECK(approx_rel(theorem1_rho(params), 15.0 / 8.0, 1e-12)); // (2mu+1)/(mu+1) binds

    CHECK_THROWS_AS(theorem1_rho(AnalysisParams{1.1, 0.9}), std::invalid_argument); // mu <= 1/nu
}

TEST_CASE("minimize_theorem1 reproduces the optimal parameters") {
    const Theorem1Optimum opt = minimize_theorem1();
    CHECK(std::abs(opt.mu0 - 6.16277) < 1e-4);
    CHECK(std::abs(opt.nu0 - 0.860389) < 1e-5);
    CHECK(std::abs(opt.rho - 1.86039) < 1e-4);
    const double poly =
        ((((opt.mu0 - 4) * opt.mu0 - 11) * opt.mu0 - 13) * opt.mu0 - 8) * opt.mu0 - 2;
    CHECK(std::abs(poly) < 1e-8);

    // sample of feasible parameters, none beats the optimum
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> mu_draw(1.1, 20.0), nu_draw(0.62, 0.999);
    int sampled = 0;
    while (sampled < 100) {
        const AnalysisParams p{mu_draw(rng), nu_draw(rng)};
        if (!(p.mu > 1 / p.nu) || !(1 + 1 / p.mu <= p.nu + p.nu * p.nu)) continue;
        ++sampled;
        CHECK(theorem1_rho(p) >= opt.rho - 1e-6);
    }
}

TEST_CASE("bisect_root") {
    const double root = bisect_root([](double x) { return x * x - 2; }, 0, 2);
    CHECK(std::abs(root - std::numbers::sqrt2) < 1e-12);
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1; }, 0, 2), NumericalError);
}

TEST_CASE("sidle_ratio_bound at the tuned cutoff") {
    const SidleBound bound = sidle_ratio_bound(1.3554157267758447);
    CHECK(std::abs(bound.rho - 1.58451) < 1e-4);
    CHECK(std::abs(bound.alpha - 0.644584) < 1e-3);
    CHECK(std::abs(bound.gamma - 0.737781) < 1e-3);
}

TEST_CASE("sidle_ratio_bound limiting cases") {
    const SidleBound at_zero = sidle_ratio_bound(0.0);
    CHECK(approx_rel(at_zero.rho, 2.0, 1e-9));
    CHECK(at_zero.alpha < 1e-6);

    // brute-force grid oracle at y = 1
    double brute = 0;
    for (int i = 0; i <= 1000; ++i)
        for (int j = 0; j <= 1000; ++j)
            brute = std::max(brute, sidle_adversary_value(i / 1000.0, j / 1000.0, 1.0));
    const SidleBound at_one = sidle_ratio_bound(1.0);
    CHECK(at_one.rho >= brute - 1e-12);
    CHECK(at_one.rho <= brute + 1e-4);

    CHECK_THROWS_AS(sidle_ratio_bound(-0.5), std::invalid_argument);
}

TEST_CASE("optimize_sidle reproduces the tuned cutoff") {
    const SidleOptimum opt = optimize_sidle();
    CHECK(std::abs(opt.y0 - 1.35542) < 1e-4);
    CHECK(std::abs(opt.rho0 - 1.58451) < 1e-4);
    const double cubic = ((2 * opt.y0 - 9) * opt.y0 + 10) * opt.y0 - 2;
    CHECK(std::abs(cubic) < 1e-8);
    // local minimum
    CHECK(sidle_ratio_bound(opt.y0 - 0.05).rho > opt.rho0);
    CHECK(sidle_ratio_bound(opt.y0 + 0.05).rho > opt.rho0);
}

TEST_CASE("betasort_lower_bound closed forms") {
    const BetaSortLowerBound at_one = betasort_lower_bound(1.0);
    CHECK(approx_rel(at_one.ratio, std::numbers::phi, 1e-12));
    CHECK(approx_rel(at_one.gamma, (3 - std::sqrt(5.0)) / 2, 1e-12));
    CHECK(approx_rel(betasort_lower_bound(0.5).ratio, 2.0, 1e-12));
    CHECK(std::abs(betasort_lower_bound(2.0).ratio - 1.851) < 1e-3);
    CHECK(std::abs(betasort_lower_bound(4.0 / 3.0).ratio - 1.688) < 1e-3);
    // both branches meet at beta = 1
    const double large_at_one = (std::sqrt(4 * 1 * (1 + 1 - 1) + 1) + 1) / 2;
    CHECK(approx_rel(at_one.ratio, large_at_one, 1e-12));
    CHECK_THROWS_AS(betasort_lower_bound(0.0), std::invalid_argument);
}

TEST_CASE("adversary ratio formula") {
    const double gamma0 = std::numbers::sqrt2 - 1;
    CHECK(approx_rel(sqrt2_adversary_limit(gamma0), std::numbers::sqrt2, 1e-12));
    CHECK(sqrt2_adversary_limit(0.0) == 1.0);
    CHECK(sqrt2_adversary_limit(1.0) == 1.0);
    CHECK(sqrt2_adversary_ratio(0.0, 50) == 1.0);
    CHECK(sqrt2_adversary_ratio(1.0, 50) == 1.0);
    // rounding to the nearest multiple of 1/n
    CHECK(approx_rel(sqrt2_adversary_ratio(0.414, 10), sqrt2_adversary_ratio(0.4, 10), 1e-12));
    CHECK(sqrt2_adversary_ratio(gamma0, 100000) < std::numbers::sqrt2);
    CHECK(sqrt2_adversary_ratio(gamma0, 100000) > std::numbers::sqrt2 - 1e-4);
    CHECK_THROWS_AS(sqrt2_adversary_ratio(1.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(sqrt2_adversary_ratio(0.5, 0), std::invalid_argument);
}
