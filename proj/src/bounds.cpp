#include "testsched/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "testsched/io.hpp"

namespace testsched {

double bisect_root(const std::function<double(double)>& f, double lo, double hi, int iterations) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo < 0) == (fhi < 0))
        throw NumericalError("root not bracketed on [" + format_double(lo) + ", " +
                             format_double(hi) + "]");
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0) return mid;
        if ((fmid < 0) == (flo < 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double theorem1_rho(const AnalysisParams& params) {
    params.validate();
    const double mu = params.mu, nu = params.nu;
    const std::array<double, 9> terms = {
        (nu + nu * nu + 2 + 2 / mu) / (nu + nu * nu + 1 + 1 / mu),
        1 + 1 / (2 + nu),
        (4 / nu + 4 / (mu * nu) + nu + nu * nu + 1) / (2 / nu + 2 / (mu * nu) + nu + nu * nu),
        (4 / nu + 4 / (nu * mu) + nu + 1 / (mu + 1)) / (2 / nu + 2 / (mu * nu) + nu),
        (4 + 5 / mu + nu) / (2 + 2 / mu + nu),
        1 + 1 / (nu + nu * nu),
        1 + 1 / (nu * (mu + 1)),
        (2 * mu + 1) / (mu + 1),
        1 + nu,
    };
    return *std::max_element(terms.begin(), terms.end());
}

namespace {

bool feasible(double mu, double nu) {
    return mu > 1 && nu > 0 && nu < 1 && mu > 1 / nu && 1 + 1 / mu <= nu + nu * nu;
}

double rho_if_feasible(double mu, double nu) {
    if (!feasible(mu, nu)) return std::numeric_limits<double>::infinity();
    return theorem1_rho(AnalysisParams{mu, nu});
}

} // namespace

Theorem1Optimum minimize_theorem1() {
    const auto quintic = [](double m) {
        return ((((m - 4) * m - 11) * m - 13) * m - 8) * m - 2;
    };
    const double mu0 = bisect_root(quintic, 1.0, 20.0);
    const double nu0 = mu0 / (mu0 + 1);
    const double rho = (2 * mu0 + 1) / (mu0 + 1);

    const double direct = theorem1_rho(AnalysisParams{mu0, nu0});
    if (std::abs(direct - rho) > 1e-9)
        throw NumericalError("closed-form optimum disagrees with the nine-term bound");

    // sweep the feasible region, then zoom in around the best grid point
    double best = std::numeric_limits<double>::infinity();
    double best_mu = mu0, best_nu = nu0;
    for (int i = 0; i <= 200; ++i) {
        const double mu = 1.0 + 19.0 * i / 200.0;
        for (int j = 0; j <= 200; ++j) {
            const double nu = 0.60 + 0.399 * j / 200.0;
            const double r = rho_if_feasible(mu, nu);
            if (r < best) {
                best = r;
                best_mu = mu;
                best_nu = nu;
            }
        }
    }
    double window_mu = 19.0 / 200.0, window_nu = 0.399 / 200.0;
    for (int round = 0; round < 4; ++round) {
        const double mu_lo = best_mu - window_mu, mu_hi = best_mu + window_mu;
        const double nu_lo = best_nu - window_nu, nu_hi = best_nu + window_nu;
        for (int i = 0; i <= 40; ++i) {
            const double mu = mu_lo + (mu_hi - mu_lo) * i / 40.0;
            for (int j = 0; j <= 40; ++j) {
                const double nu = nu_lo + (nu_hi - nu_lo) * j / 40.0;
                const double r = rho_if_feasible(mu, nu);
                if (r < best) {
                    best = r;
                    best_mu = mu;
                    best_nu = nu;
                }
            }
        }
        window_mu /= 10;
        window_nu /= 10;
    }
    if (best < rho - 1e-6)
        throw NumericalError("grid found parameters beating the closed-form optimum");
    return {mu0, nu0, rho};
}

double sidle_adversary_value(double alpha, double gamma, double y) {
    const double a2 = alpha * alpha;
    const double ag = alpha * gamma;
    const double num = 1 - a2 / 2 + (y / 2) * (1 + 2 * a2 * gamma - a2 * gamma * gamma - 2 * ag);
    const double den = 0.5 + (y / 2) * (1 + ag * ag - 2 * ag);
    return num / den;
}

namespace {

SidleBound maximize_adversary(double y, double coarse_step) {
    SidleBound best{-std::numeric_limits<double>::infinity(), 0, 0};
    const int steps = static_cast<int>(std::round(1.0 / coarse_step));
    for (int i = 0; i <= steps; ++i) {
        const double a = static_cast<double>(i) / steps;
        for (int j = 0; j <= steps; ++j) {
            const double g = static_cast<double>(j) / steps;
            const double v = sidle_adversary_value(a, g, y);
            if (v > best.rho) best = {v, a, g};
        }
    }
    double window = coarse_step;
    while (window > 1e-7) {
        const double a_lo = std::max(0.0, best.alpha - window);
        const double a_hi = std::min(1.0, best.alpha + window);
        const double g_lo = std::max(0.0, best.gamma - window);
        const double g_hi = std::min(1.0, best.gamma + window);
        for (int i = 0; i <= 20; ++i) {
            const double a = a_lo + (a_hi - a_lo) * i / 20.0;
            for (int j = 0; j <= 20; ++j) {
                const double g = g_lo + (g_hi - g_lo) * j / 20.0;
                const double v = sidle_adversary_value(a, g, y);
                if (v > best.rho) best = {v, a, g};
            }
        }
        window /= 10;
    }
    return best;
}

} // namespace

SidleBound sidle_ratio_bound(double y) {
    if (y < 0) throw std::invalid_argument("cutoff must be nonnegative");
    return maximize_adversary(y, 1e-3);
}

SidleOptimum optimize_sidle() {
    // outer scan with a cheap inner grid, then precise evaluations near the minimum
    double best_y = 1.0;
    double best_v = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 250; ++i) {
        const double y = 5.0 * i / 250.0;
        const double v = maximize_adversary(y, 5e-3).rho;
        if (v < best_v) {
            best_v = v;
            best_y = y;
        }
    }
    double window = 0.02;
    while (window > 2e-5) {
        const double lo = std::max(1e-6, best_y - window);
        const double hi = best_y + window;
        for (int i = 0; i <= 10; ++i) {
            const double y = lo + (hi - lo) * i / 10.0;
            const double v = maximize_adversary(y, 1e-3).rho;
            if (v < best_v) {
                best_v = v;
                best_y = y;
            }
        }
        window /= 4;
    }

    // closed-form cross-check: second real root of 2y^3 - 9y^2 + 10y - 2
    const auto cubic = [](double y) { return ((2 * y - 9) * y + 10) * y - 2; };
    std::vector<double> roots;
    double prev = 0.0, fprev = cubic(0.0);
    for (int i = 1; i <= 500; ++i) {
        const double y = 5.0 * i / 500.0;
        const double fy = cubic(y);
        if (fy == 0 || (fy < 0) != (fprev < 0)) roots.push_back(bisect_root(cubic, prev, y));
        prev = y;
        fprev = fy;
    }
    if (roots.size() < 2) throw NumericalError("expected at least two cubic roots on (0, 5]");
    const double y0 = roots[1];
    const double inner = 9 - 2 * y0 - y0 * y0 - 2 * y0 * y0 * y0 + y0 * y0 * y0 * y0;
    const double rho0 = 0.5 * (1 - y0 + y0 * y0 + std::sqrt(inner));

    if (std::abs(y0 - best_y) > 1e-3 || std::abs(rho0 - best_v) > 1e-4)
        throw NumericalError("threshold optimizer disagrees with the closed form");

    const SidleBound at_root = sidle_ratio_bound(y0);
    if (std::abs(at_root.rho - rho0) > 1e-4)
        throw NumericalError("ratio at the closed-form root disagrees with the closed form");
    return {y0, rho0, at_root.alpha, at_root.gamma};
}

BetaSortLowerBound betasort_lower_bound(double beta) {
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    if (beta <= 1) {
        const double ratio = 0.5 * (std::sqrt((beta + 4) / beta) + 1);
        const double gamma = (beta + 2 - std::sqrt(beta * (beta + 4))) / 2;
        return {ratio, gamma};
    }
    const double disc = std::sqrt(4 * beta * (beta * beta + beta - 1) + 1);
    const double ratio = (disc + 1) / (2 * beta);
    const double gamma = (-1 + 2 * beta + 2 * beta * beta - disc) / (2 * beta * beta);
    return {ratio, gamma};
}

double sqrt2_adversary_ratio(double gamma, std::size_t n) {
    if (!(gamma >= 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in [0, 1]");
    if (n == 0) throw std::invalid_argument("need at least one job");
    const double g = static_cast<double>(std::llround(gamma * static_cast<double>(n))) /
                     static_cast<double>(n);
    const double tail = (1 + g) / static_cast<double>(n);
    return (1 + 2 * g - g * g + tail) / (g * g + 1 + tail);
}

double sqrt2_adversary_limit(double gamma) {
    return (1 + 2 * gamma - gamma * gamma) / (gamma * gamma + 1);
}

} // namespace testsched
