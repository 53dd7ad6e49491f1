#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "testsched/algorithms.hpp"
#include "testsched/analysis.hpp"
#include "testsched/bounds.hpp"
#include "testsched/decomposition.hpp"
#include "testsched/families.hpp"
#include "testsched/io.hpp"

namespace {

using nlohmann::json;
using namespace testsched;

constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;
constexpr int kExitNumerical = 4;

struct Range {
    double lo = 0, hi = 0, step = 0;
};

struct Params {
    std::map<std::string, double> values;
    std::map<std::string, Range> ranges;

    double get(const std::string& key, double fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
    bool has(const std::string& key) const { return values.count(key) != 0; }
};

double parse_number(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad number: " + text);
    return v;
}

Params parse_params(const std::vector<std::string>& raw) {
    Params params;
    for (const std::string& entry : raw) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--param expects key=value, got: " + entry);
        const std::string key = entry.substr(0, eq);
        const std::string value = entry.substr(eq + 1);
        const auto c1 = value.find(':');
        if (c1 == std::string::npos) {
            params.values[key] = parse_number(value);
            continue;
        }
        const auto c2 = value.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument("range parameter expects lo:hi:step, got: " + entry);
        Range r{parse_number(value.substr(0, c1)),
                parse_number(value.substr(c1 + 1, c2 - c1 - 1)),
                parse_number(value.substr(c2 + 1))};
        if (!(r.step > 0) || r.hi < r.lo)
            throw std::invalid_argument("sweep range must be non-empty with positive step");
        params.ranges[key] = r;
    }
    return params;
}

// Values every subcommand may need; the expensive ones are computed lazily.
struct Tuned {
    const SidleOptimum& sidle() {
        if (!sidle_) sidle_ = optimize_sidle();
        return *sidle_;
    }
    const Theorem1Optimum& one_sort() {
        if (!one_sort_) one_sort_ = minimize_theorem1();
        return *one_sort_;
    }

private:
    std::optional<SidleOptimum> sidle_;
    std::optional<Theorem1Optimum> one_sort_;
};

Tuned tuned;

families::Family make_family(const std::string& name, const Params& params,
                             std::uint64_t seed, std::size_t n_flag, double gamma_flag) {
    const auto count = [&](double fallback) {
        return static_cast<std::size_t>(
            params.get("n", n_flag ? static_cast<double>(n_flag) : fallback));
    };
    if (name == "fig1") {
        const double scale = params.get("M", 1.0);
        return families::Fig1{scale, params.get("eps", scale * 1e-6)};
    }
    if (name == "fig2") {
        const double scale = params.get("M", 1.0);
        return families::Fig2{static_cast<std::size_t>(params.get("k", 2)), scale,
                              params.get("eps", scale * 1e-6)};
    }
    if (name == "beta-lb-small") {
        const double beta = params.get("beta", 1.0);
        const double scale = params.get("M", 1.0);
        const double gamma = params.has("gamma") ? params.get("gamma", 0)
                             : gamma_flag >= 0   ? gamma_flag
                                                 : betasort_lower_bound(beta).gamma;
        return families::BetaLbSmall{beta, count(1000), gamma, scale,
                                     params.get("eps", scale * 1e-6)};
    }
    if (name == "beta-lb-large") {
        const double beta = params.get("beta", 1.0);
        const double gamma = params.has("gamma") ? params.get("gamma", 0)
                             : gamma_flag >= 0   ? gamma_flag
                                                 : betasort_lower_bound(beta).gamma;
        return families::BetaLbLarge{beta, count(1000), gamma, params.get("eps", 1e-6)};
    }
    if (name == "sidle-tight") {
        const bool need_tuned = !params.has("y") || !params.has("alpha") || !params.has("gamma");
        double y = 0, alpha = 0, gamma = gamma_flag;
        if (need_tuned) {
            const SidleOptimum& opt = tuned.sidle();
            y = opt.y0;
            alpha = opt.alpha;
            if (gamma < 0) gamma = opt.gamma;
        }
        return families::SidleTight{count(1000), params.get("y", y),
                                    params.get("alpha", alpha), params.get("gamma", gamma),
                                    params.get("eps", 1e-6)};
    }
    if (name == "random") {
        families::RandomMixture mix;
        mix.n = count(12);
        mix.seed = static_cast<std::uint64_t>(params.get("seed", static_cast<double>(seed)));
        mix.imbalanced_prob = params.get("q", mix.imbalanced_prob);
        mix.head_prob = params.get("head", mix.head_prob);
        mix.mu = params.get("mu", mix.mu);
        mix.nu = params.get("nu", mix.nu);
        mix.scale_lo = params.get("lo", mix.scale_lo);
        mix.scale_hi = params.get("hi", mix.scale_hi);
        return mix;
    }
    throw std::invalid_argument("unknown family: " + name);
}

std::string six_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

int cmd_run(const Instance& instance, const AlgorithmSpec& alg, const std::string& trace_path) {
    const RatioResult result = ratio_check(instance, alg);
    if (!trace_path.empty() && !instance.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + trace_path);
        write_schedule_csv(out, run_algorithm(alg, instance));
    }
    std::cout << "ALG " << format_double(result.alg_objective) << '\n'
              << "OPT " << format_double(result.opt_objective) << '\n'
              << "ratio " << format_double(result.ratio) << '\n';
    return 0;
}

int cmd_bounds(const std::string& format, const std::string& out_path) {
    const Theorem1Optimum& one = tuned.one_sort();
    const SidleOptimum& sid = tuned.sidle();
    const BetaSortLowerBound lb = betasort_lower_bound(1.0);
    std::ostringstream os;
    if (format == "json") {
        json j;
        j["one_sort"] = {{"mu0", one.mu0}, {"nu0", one.nu0}, {"rho", one.rho}};
        j["sidle"] = {{"y0", sid.y0}, {"rho0", sid.rho0}, {"alpha", sid.alpha},
                      {"gamma", sid.gamma}};
        j["beta_sort_lower_bound_at_1"] = {{"ratio", lb.ratio}, {"gamma", lb.gamma}};
        j["deterministic_lower_bound"] = sqrt2_adversary_limit(std::sqrt(2.0) - 1);
        os << j.dump(2) << '\n';
    } else {
        os << "1-SORT bound:        mu0=" << six_digits(one.mu0) << " nu0=" << six_digits(one.nu0)
           << " rho=" << six_digits(one.rho) << '\n'
           << "SIDLE bound:         y0=" << six_digits(sid.y0) << " rho0=" << six_digits(sid.rho0)
           << " alpha=" << six_digits(sid.alpha) << " gamma=" << six_digits(sid.gamma) << '\n'
           << "1-SORT lower bound:  " << six_digits(lb.ratio) << " at gamma=" << six_digits(lb.gamma)
           << '\n'
           << "adversary bound:     " << six_digits(sqrt2_adversary_limit(std::sqrt(2.0) - 1))
           << " at gamma=" << six_digits(std::sqrt(2.0) - 1) << '\n';
    }
    write_text(out_path, os.str());
    return 0;
}

int cmd_sweep(const Params& params, const AlgorithmSpec& alg, std::size_t n,
              const std::string& out_path) {
    if (params.ranges.size() != 1)
        throw std::invalid_argument("sweep expects exactly one ranged --param (beta, y or gamma)");
    const auto& [key, range] = *params.ranges.begin();
    std::ostringstream os;
    const auto points = [&range]() {
        std::vector<double> xs;
        for (double x = range.lo; x <= range.hi + range.step * 1e-9; x += range.step)
            xs.push_back(x);
        return xs;
    }();
    if (key == "beta") {
        os << "beta,lower_bound,gamma_star" << (n ? ",measured_ratio\n" : "\n");
        for (double beta : points) {
            const BetaSortLowerBound lb = betasort_lower_bound(beta);
            os << format_double(beta) << ',' << format_double(lb.ratio) << ','
               << format_double(lb.gamma);
            if (n) {
                const families::Family fam =
                    beta <= 1
                        ? families::Family(families::BetaLbSmall{beta, n, lb.gamma, 1.0, 1e-6})
                        : families::Family(families::BetaLbLarge{beta, n, lb.gamma, 1e-6});
                const AlgorithmSpec bs{AlgorithmKind::BetaSort, beta, 1.0};
                os << ',' << format_double(family_ratio_check(fam, bs).ratio);
            }
            os << '\n';
        }
    } else if (key == "y") {
        os << "y,rho,alpha_star,gamma_star\n";
        for (double y : points) {
            const SidleBound b = sidle_ratio_bound(y);
            os << format_double(y) << ',' << format_double(b.rho) << ','
               << format_double(b.alpha) << ',' << format_double(b.gamma) << '\n';
        }
    } else if (key == "gamma") {
        os << "gamma,alg,opt,ratio\n";
        for (double gamma : points) {
            const RatioResult r = adversary_run(alg, n ? n : 1000, gamma);
            os << format_double(gamma) << ',' << format_double(r.alg_objective) << ','
               << format_double(r.opt_objective) << ',' << format_double(r.ratio) << '\n';
        }
    } else {
        throw std::invalid_argument("sweepable parameters are beta, y and gamma");
    }
    write_text(out_path, os.str());
    return 0;
}

int cmd_verify(const Params& params, std::size_t count, std::size_t max_jobs,
               std::uint64_t seed, const std::string& out_path) {
    AnalysisParams ap;
    if (params.has("mu") || params.has("nu")) {
        ap.mu = params.get("mu", 0);
        ap.nu = params.get("nu", 0);
    } else {
        const Theorem1Optimum& one = tuned.one_sort();
        ap.mu = one.mu0;
        ap.nu = one.nu0;
    }
    ap.validate();

    json lemma_totals = json::array();
    std::vector<CheckStat> totals;
    std::size_t groups = 0, blue_used = 0, splits = 0, invariant_checks = 0, leftover = 0;
    double group_min = 1.0, group_max = 1.0;
    std::vector<std::size_t> histogram(10, 0);
    std::vector<std::string> violations;

    for (std::size_t i = 0; i < count; ++i) {
        families::RandomMixture mix;
        mix.n = 3 + i % (max_jobs > 3 ? max_jobs - 2 : 1);
        mix.seed = seed + 0x9E3779B97F4A7C15ull * (i + 1);
        mix.mu = ap.mu;
        mix.nu = ap.nu;
        const Instance inst = families::generate(mix);

        const LemmaReport lemmas = verify_lemma_bounds(inst, ap);
        if (totals.empty()) {
            totals = lemmas.checks;
        } else {
            for (std::size_t c = 0; c < totals.size(); ++c) {
                totals[c].checked += lemmas.checks[c].checked;
                totals[c].violations += lemmas.checks[c].violations;
                totals[c].worst_ratio =
                    std::max(totals[c].worst_ratio, lemmas.checks[c].worst_ratio);
            }
        }
        for (const CheckStat& c : lemmas.checks)
            for (const std::string& d : c.details)
                violations.push_back("instance " + std::to_string(i) + ": " + c.name + ": " + d);

        const ChargingReport charge = charging(inst, ap);
        groups += charge.groups.size();
        blue_used += charge.blue_arcs_used;
        splits += charge.split_arcs;
        invariant_checks += charge.invariant_checks;
        leftover += charge.leftover_arcs;
        for (const ChargeGroup& g : charge.groups) {
            group_min = std::min(group_min, g.ratio);
            group_max = std::max(group_max, g.ratio);
            const int bin = std::clamp(static_cast<int>((g.ratio - 1.0) * 10), 0, 9);
            ++histogram[static_cast<std::size_t>(bin)];
        }
        for (const std::string& v : charge.violations)
            violations.push_back("instance " + std::to_string(i) + ": charging: " + v);
    }

    for (const CheckStat& c : totals)
        lemma_totals.push_back({{"name", c.name},
                                {"bound", c.bound},
                                {"checked", c.checked},
                                {"violations", c.violations},
                                {"worst_ratio", c.worst_ratio}});
    json hist = json::array();
    for (std::size_t b = 0; b < histogram.size(); ++b)
        hist.push_back({{"lo", 1.0 + 0.1 * static_cast<double>(b)},
                        {"hi", 1.0 + 0.1 * static_cast<double>(b + 1)},
                        {"count", histogram[b]}});
    json report{
        {"params", {{"mu", ap.mu}, {"nu", ap.nu}}},
        {"seed", seed},
        {"instances", count},
        {"max_jobs", max_jobs},
        {"lemmas", lemma_totals},
        {"charging",
         {{"groups", groups},
          {"blue_arcs_used", blue_used},
          {"split_arcs", splits},
          {"invariant_checks", invariant_checks},
          {"leftover_arcs", leftover},
          {"group_ratio_min", group_min},
          {"group_ratio_max", group_max},
          {"group_ratio_histogram", hist}}},
        {"violations", violations},
        {"ok", violations.empty()},
    };
    write_text(out_path, report.dump(2) + "\n");
    return violations.empty() ? 0 : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-machine scheduling with obligatory tests: simulators, "
                 "adversarial families and analysis checks"};
    app.require_subcommand(1);

    std::string alg_name = "beta-sort";
    double beta = 1.0;
    double threshold = 1.35542;
    std::string family_name;
    std::string instance_path;
    std::string out_path;
    std::string format = "text";
    std::vector<std::string> raw_params;
    std::uint64_t seed = 1;
    std::size_t n_flag = 0;
    double gamma_flag = -1;
    std::size_t count = 200;
    std::size_t max_jobs = 12;

    const auto add_alg = [&](CLI::App* cmd) {
        cmd->add_option("--alg", alg_name, "beta-sort | sidle | test-all-spt | immediate");
        cmd->add_option("--beta", beta, "priority weight of beta-sort");
        cmd->add_option("--y", threshold, "cutoff of sidle");
    };
    const auto add_family = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--family", family_name,
                                    "fig1 | fig2 | beta-lb-small | beta-lb-large | "
                                    "sidle-tight | random");
        if (required) opt->required();
        cmd->add_option("--param", raw_params, "family or sweep parameter, key=value")
            ->take_all();
        cmd->add_option("--seed", seed, "seed for random families");
        cmd->add_option("--n", n_flag, "number of jobs");
        cmd->add_option("--gamma", gamma_flag, "fraction parameter");
    };

    CLI::App* run = app.add_subcommand("run", "run an algorithm on an instance");
    add_alg(run);
    add_family(run, false);
    run->add_option("--instance", instance_path, "instance file (t,p per line)");
    run->add_option("--out", out_path, "write the schedule trace CSV here");

    CLI::App* ratio = app.add_subcommand("ratio", "algorithm vs optimum on a family");
    add_alg(ratio);
    add_family(ratio, true);

    CLI::App* sweep = app.add_subcommand("sweep", "curve export over beta, y or gamma");
    add_alg(sweep);
    add_family(sweep, false);
    sweep->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "lemma and charging checks on random instances");
    verify->add_option("--count", count, "number of random instances");
    verify->add_option("--n", max_jobs, "largest instance size");
    verify->add_option("--seed", seed, "campaign seed");
    verify->add_option("--param", raw_params, "override mu=... nu=...")->take_all();
    verify->add_option("--out", out_path, "output JSON path (default stdout)");

    CLI::App* generate = app.add_subcommand("generate", "write a family instance file");
    add_family(generate, true);
    generate->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* bounds = app.add_subcommand("bounds", "print the tuned constants and bounds");
    bounds->add_option("--format", format, "text | json");
    bounds->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const Params params = parse_params(raw_params);
        if (run->parsed()) {
            const AlgorithmSpec spec = AlgorithmSpec::parse(alg_name, beta, threshold);
            Instance inst;
            if (!instance_path.empty())
                inst = read_instance_file(instance_path);
            else if (!family_name.empty())
                inst = families::generate(make_family(family_name, params, seed, n_flag, gamma_flag));
            else
                throw std::invalid_argument("run needs --instance or --family");
            return cmd_run(inst, spec, out_path);
        }
        if (ratio->parsed()) {
            const AlgorithmSpec spec = AlgorithmSpec::parse(alg_name, beta, threshold);
            const Instance inst =
                families::generate(make_family(family_name, params, seed, n_flag, gamma_flag));
            return cmd_run(inst, spec, "");
        }
        if (sweep->parsed()) {
            const AlgorithmSpec spec = AlgorithmSpec::parse(alg_name, beta, threshold);
            return cmd_sweep(params, spec, n_flag, out_path);
        }
        if (verify->parsed()) return cmd_verify(params, count, max_jobs, seed, out_path);
        if (generate->parsed()) {
            const Instance inst =
                families::generate(make_family(family_name, params, seed, n_flag, gamma_flag));
            std::ostringstream os;
            write_instance(os, inst);
            write_text(out_path, os.str());
            return 0;
        }
        if (bounds->parsed()) return cmd_bounds(format, out_path);
        throw std::invalid_argument("no subcommand");
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
