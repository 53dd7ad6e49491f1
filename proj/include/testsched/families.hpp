#ifndef TESTSCHED_FAMILIES_HPP
#define TESTSCHED_FAMILIES_HPP

#include <cstdint>
#include <variant>

#include "testsched/algorithms.hpp"
#include "testsched/jobs.hpp"

namespace testsched {
namespace families {

// Two jobs (0, M) and (M - eps, M + eps): a single arc whose delay ratio
// under the unit-weight priority scheduler approaches 2 as eps -> 0.
struct Fig1 {
    double scale = 1.0; // M
    double eps = 1e-6;
};

// k copies of (0, M) followed by k copies of (M - eps, M + eps); the ratio
// of the priority scheduler approaches 1.6.
struct Fig2 {
    std::size_t k = 2;
    double scale = 1.0; // M
    double eps = 1e-6;
};

// Worst-case family for priority weight beta <= 1: gamma*n jobs (0, M)
// followed by (1-gamma)*n jobs (M/beta - 2 eps, M - eps).
struct BetaLbSmall {
    double beta = 1.0;
    std::size_t n = 0;
    double gamma = 0;   // fraction of short jobs
    double scale = 1.0; // M
    double eps = 1e-6;
};

// Worst-case family for priority weight beta >= 1: gamma*n jobs
// (1 + 2 eps, 0) followed by (1-gamma)*n jobs (1, beta + eps).
struct BetaLbLarge {
    double beta = 1.0;
    std::size_t n = 0;
    double gamma = 0;
    double eps = 1e-6;
};

// Tight family for the threshold scheduler at cutoff y, presented in the
// worst test order: (1-alpha)*n jobs (1, y + eps) first, then the short jobs
// in reverse shortest-first order: alpha*(1-gamma)*n jobs (1, y) and finally
// alpha*gamma*n jobs (1, 0).
struct SidleTight {
    std::size_t n = 0;
    double y = 1.0;
    double alpha = 0;
    double gamma = 0;
    double eps = 1e-6;
};

// Random mixture aimed at stressing the arc analysis: imbalanced jobs are
// drawn around shared magnitude clusters, head candidates have test times
// inside the window [nu * m, m] of a cluster and processing times at least
// nu times their test time, and the remainder is uniform noise.
struct RandomMixture {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double imbalanced_prob = 0.35;
    double head_prob = 0.35;
    double mu = 6.162766616885753;
    double nu = 0.8603891410279143;
    double scale_lo = 1.0;
    double scale_hi = 4.0;
};

using Family = std::variant<Fig1, Fig2, BetaLbSmall, BetaLbLarge, SidleTight, RandomMixture>;

// Builds the instance of a family. Deterministic given the parameters
// (including RandomMixture given its seed). Throws std::invalid_argument for
// parameters outside the family's domain (eps must be positive and at most a
// hundredth of the relevant scale, fractions must lie in [0, 1], ...).
Instance generate(const Family& family);

} // namespace families

struct RatioResult {
    double alg_objective = 0;
    double opt_objective = 0;
    double ratio = 1; // 1 for empty instances
};

// Runs the algorithm and the offline optimum on the generated instance.
RatioResult family_ratio_check(const families::Family& family, const AlgorithmSpec& alg);
RatioResult ratio_check(const Instance& instance, const AlgorithmSpec& alg);

// Adaptive adversary with uniform tests: the i-th job tested receives
// processing time 1 if i <= round(gamma * n) and 0 otherwise. Returns the
// algorithm's objective, the optimum of the realized instance, and their
// ratio.
RatioResult adversary_run(const AlgorithmSpec& alg, std::size_t n, double gamma);

} // namespace testsched

#endif
