#include "testsched/families.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "testsched/decomposition.hpp"

namespace testsched {
namespace families {

namespace {

std::size_t rounded_count(double fraction, std::size_t n) {
    const long long c = std::llround(fraction * static_cast<double>(n));
    if (c < 0) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(c), n);
}

// the fixed two-block families tolerate any eps below half the scale; the
// asymptotic families need eps tiny for the measured ratios to approach the
// closed forms
void check_eps(double eps, double scale, double divisor) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(eps <= scale / divisor))
        throw std::invalid_argument("eps too large for this family");
}

void check_fraction(double f, const char* name) {
    if (!(f >= 0 && f <= 1)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// uniform double in [0, 1) with 53 random bits; unlike the standard
// distributions this is pinned across implementations
double next_unit(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

struct Generator {
    Instance operator()(const Fig1& f) const {
        if (!(f.scale > 0)) throw std::invalid_argument("scale must be positive");
        check_eps(f.eps, f.scale, 2);
        Instance inst;
        inst.push(0, f.scale);
        inst.push(f.scale - f.eps, f.scale + f.eps);
        return inst;
    }

    Instance operator()(const Fig2& f) const {
        if (!(f.scale > 0)) throw std::invalid_argument("scale must be positive");
        check_eps(f.eps, f.scale, 2);
        Instance inst;
        for (std::size_t i = 0; i < f.k; ++i) inst.push(0, f.scale);
        for (std::size_t i = 0; i < f.k; ++i) inst.push(f.scale - f.eps, f.scale + f.eps);
        return inst;
    }

    Instance operator()(const BetaLbSmall& f) const {
        if (!(f.beta > 0 && f.beta <= 1))
            throw std::invalid_argument("this family is defined for beta in (0, 1]");
        if (!(f.scale > 0)) throw std::invalid_argument("scale must be positive");
        check_fraction(f.gamma, "gamma");
        check_eps(f.eps, f.scale, 100);
        const std::size_t shorts = rounded_count(f.gamma, f.n);
        Instance inst;
        for (std::size_t i = 0; i < shorts; ++i) inst.push(0, f.scale);
        for (std::size_t i = shorts; i < f.n; ++i)
            inst.push(f.scale / f.beta - 2 * f.eps, f.scale - f.eps);
        return inst;
    }

    Instance operator()(const BetaLbLarge& f) const {
        if (!(f.beta >= 1)) throw std::invalid_argument("this family is defined for beta >= 1");
        check_fraction(f.gamma, "gamma");
        check_eps(f.eps, 1.0, 100);
        const std::size_t shorts = rounded_count(f.gamma, f.n);
        Instance inst;
        for (std::size_t i = 0; i < shorts; ++i) inst.push(1 + 2 * f.eps, 0);
        for (std::size_t i = shorts; i < f.n; ++i) inst.push(1, f.beta + f.eps);
        return inst;
    }

    Instance operator()(const SidleTight& f) const {
        if (!(f.y > 0)) throw std::invalid_argument("cutoff must be positive");
        check_fraction(f.alpha, "alpha");
        check_fraction(f.gamma, "gamma");
        check_eps(f.eps, 1.0, 100);
        const std::size_t shorts = rounded_count(f.alpha, f.n);
        const std::size_t zeros = rounded_count(f.gamma, shorts);
        Instance inst;
        for (std::size_t i = 0; i < f.n - shorts; ++i) inst.push(1, f.y + f.eps);
        for (std::size_t i = 0; i < shorts - zeros; ++i) inst.push(1, f.y);
        for (std::size_t i = 0; i < zeros; ++i) inst.push(1, 0);
        return inst;
    }

    Instance operator()(const RandomMixture& f) const {
        check_fraction(f.imbalanced_prob, "imbalanced_prob");
        check_fraction(f.head_prob, "head_prob");
        if (!(f.imbalanced_prob + f.head_prob <= 1))
            throw std::invalid_argument("type probabilities exceed 1");
        if (!(f.scale_lo > 0 && f.scale_hi >= f.scale_lo))
            throw std::invalid_argument("bad scale range");
        if (!(f.mu > 1 && f.nu > 0 && f.nu < 1))
            throw std::invalid_argument("bad mixture parameters");
        std::mt19937_64 rng(f.seed);
        const double clusters[2] = {
            f.scale_lo + next_unit(rng) * (f.scale_hi - f.scale_lo),
            f.scale_lo + next_unit(rng) * (f.scale_hi - f.scale_lo),
        };
        Instance inst;
        for (std::size_t i = 0; i < f.n; ++i) {
            // fixed number of draws per job keeps the stream aligned
            const double u_type = next_unit(rng);
            const double u1 = next_unit(rng);
            const double u2 = next_unit(rng);
            const double u3 = next_unit(rng);
            const double c = clusters[rng() & 1];
            if (u_type < f.imbalanced_prob) {
                // imbalanced job near a cluster magnitude
                const double m = c * (0.97 + 0.06 * u1);
                const double s = u2 * m / (f.mu * 1.05);
                if (u3 < 0.5)
                    inst.push(s, m);
                else
                    inst.push(m, s);
            } else if (u_type < f.imbalanced_prob + f.head_prob) {
                // test time inside [nu*m, m] for every tail of the cluster
                const double lo = f.nu * 1.03, hi = 0.97;
                const double t = c * (lo + u1 * (hi - lo));
                const double p = t * (f.nu + u2 * 1.2);
                inst.push(t, p);
            } else {
                inst.push(u1 * (f.scale_hi + 1), u2 * (f.scale_hi + 1));
            }
        }
        return inst;
    }
};

} // namespace

Instance generate(const Family& family) {
    return std::visit(Generator{}, family);
}

} // namespace families

RatioResult ratio_check(const Instance& instance, const AlgorithmSpec& alg) {
    RatioResult result;
    result.alg_objective = instance.empty() ? 0.0 : objective(run_algorithm(alg, instance));
    result.opt_objective = optimal_schedule(instance).second;
    result.ratio =
        result.opt_objective > 0 ? result.alg_objective / result.opt_objective : 1.0;
    return result;
}

RatioResult family_ratio_check(const families::Family& family, const AlgorithmSpec& alg) {
    return ratio_check(families::generate(family), alg);
}

RatioResult adversary_run(const AlgorithmSpec& alg, std::size_t n, double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in [0, 1]");
    const std::size_t longs =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(gamma * static_cast<double>(n))));
    auto oracle = RevelationOracle::adaptive(
        n, [longs](std::size_t reveal_index, JobId) { return reveal_index < longs ? 1.0 : 0.0; });
    const std::vector<double> tests(n, 1.0);
    const Schedule schedule = run_algorithm(alg, tests, oracle);

    RatioResult result;
    result.alg_objective = n == 0 ? 0.0 : objective(schedule);
    result.opt_objective = optimal_schedule(oracle.realized_instance(tests)).second;
    result.ratio =
        result.opt_objective > 0 ? result.alg_objective / result.opt_objective : 1.0;
    return result;
}

} // namespace testsched
