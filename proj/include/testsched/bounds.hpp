#ifndef TESTSCHED_BOUNDS_HPP
#define TESTSCHED_BOUNDS_HPP

#include <functional>
#include <stdexcept>

#include "testsched/analysis.hpp"

namespace testsched {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain bisection with a fixed iteration count; throws NumericalError when
// the bracket does not change sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   int iterations = 200);

// The nine-term competitive-ratio bound of the charging analysis, evaluated
// exactly as displayed. Equals max(params.rho_charging(), params.rho_nonred()).
double theorem1_rho(const AnalysisParams& params);

struct Theorem1Optimum {
    double mu0 = 0;
    double nu0 = 0;
    double rho = 0;
};

// Minimizes theorem1_rho over the feasible parameter region: mu0 is the only
// real root of mu^5 - 4mu^4 - 11mu^3 - 13mu^2 - 8mu - 2 on [1, 20],
// nu0 = mu0 / (mu0 + 1), rho = (2mu0 + 1) / (mu0 + 1). A grid sweep with
// local refinement confirms no feasible point beats rho by more than 1e-6;
// throws NumericalError otherwise.
Theorem1Optimum minimize_theorem1();

// Adversary value against the threshold scheduler at cutoff y, with a
// fraction `alpha` of jobs below the cutoff and a fraction `gamma` of those
// having zero processing time:
//
//   f(a, g; y) = (1 - a^2/2 + (y/2)(1 + 2a^2 g - a^2 g^2 - 2 a g))
//              / (1/2 + (y/2)(1 + a^2 g^2 - 2 a g))
double sidle_adversary_value(double alpha, double gamma, double y);

struct SidleBound {
    double rho = 0;
    double alpha = 0;
    double gamma = 0;
};

// Maximizes sidle_adversary_value over alpha, gamma in [0,1]^2 by a coarse
// grid (step 1e-3) plus local refinement to 1e-7.
SidleBound sidle_ratio_bound(double y);

struct SidleOptimum {
    double y0 = 0;
    double rho0 = 0;
    double alpha = 0;
    double gamma = 0;
};

// Minimizes sidle_ratio_bound over y in (0, 5] by grid plus refinement and
// cross-validates the result: y0 must agree with the second-smallest real
// root of 2y^3 - 9y^2 + 10y - 2 and rho0 with
// (1 - y0 + y0^2 + sqrt(9 - 2y0 - y0^2 - 2y0^3 + y0^4)) / 2
// to within 1e-4; throws NumericalError on disagreement. The returned values
// are the cross-validated closed forms.
SidleOptimum optimize_sidle();

struct BetaSortLowerBound {
    double ratio = 0;
    double gamma = 0; // worst-case fraction of short jobs
};

// Closed-form lower bound on the competitive ratio of the priority scheduler
// with weight beta, together with the maximizing short-job fraction:
//   beta <= 1:  (sqrt((beta+4)/beta) + 1) / 2
//   beta >= 1:  (sqrt(4 beta (beta^2 + beta - 1) + 1) + 1) / (2 beta)
BetaSortLowerBound betasort_lower_bound(double beta);

// Ratio forced by the adaptive adversary with uniform tests on n jobs when a
// fraction gamma (rounded to the nearest multiple of 1/n) of the tested jobs
// receives processing time 1 and the rest 0:
//   (1 + 2g - g^2 + (1+g)/n) / (g^2 + 1 + (1+g)/n)
double sqrt2_adversary_ratio(double gamma, std::size_t n);

// Large-n limit (1 + 2g - g^2) / (g^2 + 1); maximized at g = sqrt(2) - 1
// where it equals sqrt(2).
double sqrt2_adversary_limit(double gamma);

} // namespace testsched

#endif
