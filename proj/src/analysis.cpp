#include "testsched/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "testsched/algorithms.hpp"
#include "testsched/io.hpp"

namespace testsched {

namespace {

constexpr double kSlack = 1e-9; // absolute slack on ratio comparisons

std::string pair_name(JobId a, JobId b) {
    std::ostringstream os;
    os << '{' << a << ',' << b << '}';
    return os.str();
}

} // namespace

void AnalysisParams::validate() const {
    if (!(mu > 1.0)) throw std::invalid_argument("analysis requires mu > 1");
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("analysis requires nu in (0,1)");
    if (!(mu > 1.0 / nu)) throw std::invalid_argument("analysis requires mu > 1/nu");
    if (!(1.0 + 1.0 / mu <= nu + nu * nu))
        throw std::invalid_argument("analysis requires 1 + 1/mu <= nu + nu^2");
}

double AnalysisParams::rho_nonred() const {
    return std::max((2.0 * mu + 1.0) / (mu + 1.0), 1.0 + nu);
}

double AnalysisParams::rho_single_red() const {
    const double q = nu + nu * nu;
    return (q + 2.0 + 2.0 / mu) / (q + 1.0 + 1.0 / mu);
}

double AnalysisParams::rho_charging() const {
    const double q = nu + nu * nu;
    const double x = 1.0 / nu + 1.0 / (mu * nu);
    const double terms[] = {
        rho_single_red(),
        1.0 + 1.0 / (2.0 + nu),
        (4.0 * x + q + 1.0) / (2.0 * x + q),                  // two reds + green
        (4.0 * x + nu + 1.0 / (mu + 1.0)) / (2.0 * x + nu),   // two reds + split green
        (4.0 + 5.0 / mu + nu) / (2.0 + 2.0 / mu + nu),        // two reds + blue
        rho_green(),
        rho_special(),
    };
    return *std::max_element(std::begin(terms), std::end(terms));
}

std::size_t ArcClassification::red_arc_count() const {
    std::size_t count = 0;
    for (char c : red_flat) count += c != 0;
    return count;
}

ArcClassification classify(const Instance& instance, const AnalysisParams& params) {
    params.validate();
    instance.validate();
    const std::size_t n = instance.size();

    ArcClassification cls;
    cls.n = n;
    cls.params = params;
    cls.sigma.reserve(n);
    cls.longest.reserve(n);
    cls.imbalanced.reserve(n);
    for (const Job& job : instance.jobs) {
        cls.sigma.push_back(job.size());
        cls.longest.push_back(job.longest_op());
        cls.imbalanced.push_back(job.longest_op() >= params.mu * job.shortest_op() ? 1 : 0);
    }

    for (JobId j = 0; j < n; ++j)
        if (cls.imbalanced[j]) cls.imbalance_order.push_back(j);
    std::sort(cls.imbalance_order.begin(), cls.imbalance_order.end(),
              [&](JobId a, JobId b) {
                  return cls.longest[a] != cls.longest[b] ? cls.longest[a] < cls.longest[b] : a < b;
              });
    cls.imbalance_rank.assign(n, ArcClassification::npos);
    for (std::size_t r = 0; r < cls.imbalance_order.size(); ++r)
        cls.imbalance_rank[cls.imbalance_order[r]] = r;

    cls.red_flat.assign(n * n, 0);
    cls.red_tails.assign(n, {});
    for (JobId tail = 0; tail < n; ++tail) {
        if (!cls.imbalanced[tail]) continue;
        const double m = cls.longest[tail];
        for (JobId head = 0; head < n; ++head) {
            if (head == tail || !cls.arc_from(tail, head)) continue;
            const Job& hj = instance[head];
            if (m >= hj.test_time && hj.test_time >= params.nu * m &&
                hj.proc_time >= params.nu * hj.test_time) {
                cls.red_flat[tail * n + head] = 1;
                cls.red_tails[head].push_back(tail);
            }
        }
    }
    for (JobId head = 0; head < n; ++head) {
        auto& tails = cls.red_tails[head];
        std::sort(tails.begin(), tails.end(), [&](JobId a, JobId b) {
            return cls.imbalance_rank[a] < cls.imbalance_rank[b];
        });
        if (!tails.empty()) cls.red_vertices.push_back(head);
    }
    std::sort(cls.red_vertices.begin(), cls.red_vertices.end(), [&](JobId a, JobId b) {
        const double ta = instance[a].test_time, tb = instance[b].test_time;
        return ta != tb ? ta < tb : a < b;
    });

    cls.green_partners.assign(n, {});
    for (std::size_t i = 0; i < cls.red_vertices.size(); ++i) {
        const JobId k = cls.red_vertices[i];
        for (std::size_t e = 0; e < i; ++e) {
            const JobId r = cls.red_vertices[e];
            const bool shared = std::any_of(cls.red_tails[k].begin(), cls.red_tails[k].end(),
                                            [&](JobId j) { return cls.is_red(j, r); });
            if (shared) cls.green_partners[k].push_back(r);
        }
    }
    return cls;
}

void CheckStat::count(bool holds, double ratio_seen, const std::string& detail) {
    ++checked;
    worst_ratio = std::max(worst_ratio, ratio_seen);
    if (!holds) {
        ++violations;
        if (details.size() < 16) details.push_back(detail);
    }
}

bool LemmaReport::ok() const {
    for (const CheckStat& c : checks)
        if (c.violations) return false;
    return true;
}

const CheckStat* LemmaReport::find(const std::string& name) const {
    for (const CheckStat& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

LemmaReport verify_lemma_bounds(const Instance& instance, const AnalysisParams& params) {
    const ArcClassification cls = classify(instance, params);
    const DelayDecomposition dec = decompose(beta_sort(instance, 1.0), instance);
    const std::size_t n = instance.size();

    LemmaReport report;
    report.params = params;
    auto& checks = report.checks;
    checks.resize(9);
    checks[0] = {"red-implies-smaller-size", 1.0, 0, 0, 0, {}};
    checks[1] = {"nonred-arc-ratio", params.rho_nonred(), 0, 0, 0, {}};
    checks[2] = {"all-arc-ratio-at-most-2", 2.0, 0, 0, 0, {}};
    checks[3] = {"blue-arc", params.rho_blue(), 0, 0, 0, {}};
    checks[4] = {"green-arc", params.rho_green(), 0, 0, 0, {}};
    checks[5] = {"dual-role-arc", params.rho_special(), 0, 0, 0, {}};
    checks[6] = {"red-tails-contiguous", 0, 0, 0, 0, {}};
    checks[7] = {"red-tail-prefix", 0, 0, 0, 0, {}};
    checks[8] = {"red-arc-ratio", 2.0, 0, 0, 0, {}};

    // per-arc ratio bounds; the red condition is also checked in the
    // direction the arc does not point, where it must imply the size order
    for (JobId a = 0; a < n; ++a) {
        for (JobId b = 0; b < n; ++b) {
            if (a == b) continue;
            const Job& ja = instance[a];
            const Job& jb = instance[b];
            const bool red_conditions = cls.imbalanced[a] && cls.longest[a] >= jb.test_time &&
                                        jb.test_time >= params.nu * cls.longest[a] &&
                                        jb.proc_time >= params.nu * jb.test_time;
            if (red_conditions)
                checks[0].count(ja.size() <= jb.size(),
                                jb.size() > 0 ? ja.size() / jb.size() : 1.0,
                                "red conditions with larger tail on " + pair_name(a, b));
            if (a < b) {
                const JobId tail = cls.arc_from(a, b) ? a : b;
                const JobId head = tail == a ? b : a;
                const double rho = dec.ratio(a, b);
                checks[2].count(rho <= 2.0 + kSlack, rho, "ratio above 2 on " + pair_name(a, b));
                if (cls.is_red(tail, head))
                    checks[8].count(rho <= 2.0 + kSlack, rho,
                                    "red arc above 2 on " + pair_name(a, b));
                else
                    checks[1].count(rho <= params.rho_nonred() + kSlack, rho,
                                    "non-red arc above bound on " + pair_name(a, b));
            }
        }
    }

    // blue arcs: every pair of tails of a common red vertex
    std::vector<char> blue_eligible(n * n, 0), green_eligible(n * n, 0);
    for (JobId k : cls.red_vertices) {
        const auto& tails = cls.red_tails[k];
        const double tk = instance[k].test_time;
        for (std::size_t x = 0; x < tails.size(); ++x) {
            for (std::size_t y = x + 1; y < tails.size(); ++y) {
                const JobId i = tails[x], j = tails[y];
                blue_eligible[std::min(i, j) * n + std::max(i, j)] = 1;
                const double rho = dec.ratio(i, j);
                const bool holds = dec.opt_pair_delay(i, j) >= tk - kSlack &&
                                   rho <= params.rho_blue() + kSlack;
                checks[3].count(holds, rho, "blue arc " + pair_name(i, j) + " at vertex " +
                                                std::to_string(k));
            }
        }
        for (JobId r : cls.green_partners[k]) {
            green_eligible[std::min(r, k) * n + std::max(r, k)] = 1;
            const double rho = dec.ratio(r, k);
            const bool holds =
                dec.opt_pair_delay(r, k) >= (params.nu + params.nu * params.nu) * tk - kSlack &&
                rho <= params.rho_green() + kSlack;
            checks[4].count(holds, rho, "green arc " + pair_name(r, k));
        }
    }

    // arcs eligible for both roles obey the tighter dual-role bound, and the
    // fixed split (blue part = smaller processing time) leaves both parts
    // large enough for their contexts
    for (JobId a = 0; a < n; ++a) {
        for (JobId b = a + 1; b < n; ++b) {
            if (!blue_eligible[a * n + b] || !green_eligible[a * n + b]) continue;
            const double rho = dec.ratio(a, b);
            const double blue_part = std::min(instance[a].proc_time, instance[b].proc_time);
            const double green_part = dec.opt_pair_delay(a, b) - blue_part;
            bool parts_ok = true;
            for (JobId k : cls.red_vertices) {
                const auto& tails = cls.red_tails[k];
                const double tk = instance[k].test_time;
                if (std::find(tails.begin(), tails.end(), a) != tails.end() &&
                    std::find(tails.begin(), tails.end(), b) != tails.end())
                    parts_ok = parts_ok && blue_part >= tk - kSlack;
                const bool as_green = (k == a || k == b) &&
                                      std::find(cls.green_partners[k].begin(),
                                                cls.green_partners[k].end(),
                                                k == a ? b : a) != cls.green_partners[k].end();
                if (as_green) parts_ok = parts_ok && green_part >= params.nu * tk - kSlack;
            }
            checks[5].count(parts_ok && rho <= params.rho_special() + kSlack, rho,
                            "dual-role arc " + pair_name(a, b));
        }
    }

    // structure of the tail sets
    for (JobId k : cls.red_vertices) {
        const auto& tails = cls.red_tails[k];
        const std::size_t lo = cls.imbalance_rank[tails.front()];
        const std::size_t hi = cls.imbalance_rank[tails.back()];
        checks[6].count(hi - lo + 1 == tails.size(), 0,
                        "tail set of " + std::to_string(k) + " not contiguous");
        for (JobId r : cls.green_partners[k]) {
            std::size_t overlap = 0;
            while (overlap < tails.size() && cls.is_red(tails[overlap], r)) ++overlap;
            bool prefix = true;
            for (std::size_t x = overlap; x < tails.size(); ++x)
                prefix = prefix && !cls.is_red(tails[x], r);
            bool no_later = true;
            for (JobId t : cls.red_tails[r])
                no_later = no_later && cls.imbalance_rank[t] <= hi;
            checks[7].count(prefix && no_later && overlap > 0, 0,
                            "tail sets of " + std::to_string(k) + " and " + std::to_string(r));
        }
    }
    return report;
}

namespace {

struct ArcUse {
    static constexpr JobId unused = static_cast<JobId>(-1);
    JobId blue_user = unused;
    JobId green_user = unused;
};

} // namespace

ChargingReport charging(const Instance& instance, const AnalysisParams& params) {
    const ArcClassification cls = classify(instance, params);
    const DelayDecomposition dec = decompose(beta_sort(instance, 1.0), instance);
    const std::size_t n = instance.size();

    ChargingReport report;
    report.params = params;
    report.rho_charging = params.rho_charging();
    report.rho_nonred = params.rho_nonred();

    auto violation = [&report](const std::string& what) { report.violations.push_back(what); };
    auto arc_index = [n](JobId a, JobId b) { return std::min(a, b) * n + std::max(a, b); };
    std::vector<ArcUse> use(n * n);

    // (a, b, consumer) for the invariant audit, endpoints by imbalance rank
    std::vector<std::array<JobId, 3>> used_blues;
    std::vector<char> processed(n, 0);

    for (std::size_t step = 0; step < cls.red_vertices.size(); ++step) {
        const JobId k = cls.red_vertices[step];
        const auto& tails = cls.red_tails[k];
        const std::size_t o = tails.size();

        ChargeGroup group;
        group.vertex = k;
        group.tails = tails;

        if (o == 1) {
            group.construction_case = 0;
        } else {
            // all arcs towards earlier red vertices sharing a tail are charged here
            for (JobId r : cls.green_partners[k]) {
                ArcUse& u = use[arc_index(k, r)];
                if (u.green_user != ArcUse::unused)
                    violation("green arc " + pair_name(k, r) + " consumed twice");
                if (cls.is_red(k, r) || cls.is_red(r, k))
                    violation("red arc " + pair_name(k, r) + " picked as green");
                u.green_user = k;
                group.greens.push_back(ChargedArc{r, k, false, dec.pair_delay(r, k),
                                                  dec.opt_pair_delay(r, k)});
            }
            const std::size_t greens = cls.green_partners[k].size();
            if (2 * greens >= o - 1) {
                group.construction_case = 1;
            } else {
                group.construction_case = 2;
                const std::size_t z = o - 1 - 2 * greens;
                const std::size_t need = (z + 1) / 2;
                // candidate blue arcs, unused ones first by earlier endpoint
                std::vector<std::pair<std::size_t, std::size_t>> candidates;
                for (std::size_t x = 0; x < o; ++x)
                    for (std::size_t y = x + 1; y < o; ++y)
                        if (use[arc_index(tails[x], tails[y])].blue_user == ArcUse::unused)
                            candidates.emplace_back(cls.imbalance_rank[tails[x]],
                                                    cls.imbalance_rank[tails[y]]);
                std::sort(candidates.begin(), candidates.end());
                if (candidates.size() < need)
                    violation("vertex " + std::to_string(k) + " needs " + std::to_string(need) +
                              " blue arcs but only " + std::to_string(candidates.size()) +
                              " are unused");
                for (std::size_t c = 0; c < std::min(need, candidates.size()); ++c) {
                    const JobId a = cls.imbalance_order[candidates[c].first];
                    const JobId b = cls.imbalance_order[candidates[c].second];
                    if (cls.is_red(a, b) || cls.is_red(b, a))
                        violation("red arc " + pair_name(a, b) + " picked as blue");
                    use[arc_index(a, b)].blue_user = k;
                    used_blues.push_back({a, b, k});
                    group.blues.push_back(ChargedArc{a, b, false, dec.pair_delay(a, b),
                                                     dec.opt_pair_delay(a, b)});
                }
                report.blue_arcs_used += group.blues.size();
            }
        }
        processed[k] = 1;

        // blue-arc budget invariant, stated for every tail of k
        for (JobId j : tails) {
            const std::size_t jrank = cls.imbalance_rank[j];
            // consumers: k plus every processed red vertex with a red arc from j
            std::vector<JobId> consumers{k};
            for (std::size_t e = 0; e < step; ++e) {
                const JobId r = cls.red_vertices[e];
                if (cls.is_red(j, r)) consumers.push_back(r);
            }
            std::size_t budget = 0;
            for (JobId r : consumers) {
                std::size_t o_geq = 0;
                for (JobId t : cls.red_tails[r])
                    if (cls.imbalance_rank[t] >= jrank) ++o_geq;
                budget += o_geq - 1; // o_geq >= 1: j itself is a tail of r
            }
            std::size_t used = 0;
            for (const auto& [a, b, consumer] : used_blues) {
                if (std::find(consumers.begin(), consumers.end(), consumer) == consumers.end())
                    continue;
                const bool a_in = cls.imbalance_rank[a] >= jrank &&
                                  std::find(tails.begin(), tails.end(), a) != tails.end();
                const bool b_in = cls.imbalance_rank[b] >= jrank &&
                                  std::find(tails.begin(), tails.end(), b) != tails.end();
                if (a_in && b_in) ++used;
            }
            ++report.invariant_checks;
            if (used > budget)
                violation("blue budget exceeded at vertex " + std::to_string(k) + " tail " +
                          std::to_string(j) + ": " + std::to_string(used) + " > " +
                          std::to_string(budget));
        }
        report.groups.push_back(std::move(group));
    }

    // final apportionment: arcs consumed in both roles are split so that the
    // blue part carries the smaller processing time and both parts keep the
    // whole arc's delay ratio
    for (ChargeGroup& group : report.groups) {
        for (ChargedArc& arc : group.greens) {
            const ArcUse& u = use[arc_index(arc.a, arc.b)];
            if (u.blue_user != ArcUse::unused) {
                arc.split = true;
                const double whole_opt = dec.opt_pair_delay(arc.a, arc.b);
                const double blue_opt =
                    std::min(instance[arc.a].proc_time, instance[arc.b].proc_time);
                arc.opt_delay = whole_opt - blue_opt;
                arc.delay = dec.pair_delay(arc.a, arc.b) * (arc.opt_delay / whole_opt);
            }
        }
        for (ChargedArc& arc : group.blues) {
            const ArcUse& u = use[arc_index(arc.a, arc.b)];
            if (u.green_user != ArcUse::unused) {
                arc.split = true;
                ++report.split_arcs;
                const double whole_opt = dec.opt_pair_delay(arc.a, arc.b);
                arc.opt_delay = std::min(instance[arc.a].proc_time, instance[arc.b].proc_time);
                arc.delay = dec.pair_delay(arc.a, arc.b) * (arc.opt_delay / whole_opt);
            }
        }
    }

    // per-group ratios
    for (ChargeGroup& group : report.groups) {
        const JobId k = group.vertex;
        double num = cls.sigma[k];
        double den = cls.sigma[k];
        for (JobId j : group.tails) {
            num += dec.pair_delay(j, k);
            den += dec.opt_pair_delay(j, k);
        }
        for (const ChargedArc& arc : group.greens) {
            num += arc.delay;
            den += arc.opt_delay;
        }
        for (const ChargedArc& arc : group.blues) {
            num += arc.delay;
            den += arc.opt_delay;
        }
        group.delay = num;
        group.opt_delay = den;
        group.ratio = den > 0 ? num / den : 1.0;
        group.bound = group.construction_case == 0 ? params.rho_single_red()
                                                   : params.rho_charging();
        if (group.ratio > group.bound + kSlack)
            violation("group at vertex " + std::to_string(k) + " has ratio " +
                      format_double(group.ratio) + " above " + format_double(group.bound));
    }

    // everything not consumed must be a non-red arc within the plain bound
    for (JobId a = 0; a < n; ++a) {
        for (JobId b = a + 1; b < n; ++b) {
            const ArcUse& u = use[a * n + b];
            const JobId tail = cls.arc_from(a, b) ? a : b;
            const JobId head = tail == a ? b : a;
            if (u.blue_user != ArcUse::unused || u.green_user != ArcUse::unused) continue;
            if (cls.is_red(tail, head)) continue; // charged with its head's group
            ++report.leftover_arcs;
            const double rho = dec.ratio(a, b);
            report.leftover_worst_ratio = std::max(report.leftover_worst_ratio, rho);
            if (rho > params.rho_nonred() + kSlack)
                violation("leftover arc " + pair_name(a, b) + " has ratio " + format_double(rho));
        }
    }

    report.leftover_vertices = n - report.groups.size();
    report.alg_objective = dec.total_size() + dec.total_pair_delay();
    report.opt_objective = dec.total_size() + dec.total_opt_pair_delay();
    report.overall_ratio =
        report.opt_objective > 0 ? report.alg_objective / report.opt_objective : 1.0;
    if (report.overall_ratio > std::max(report.rho_charging, report.rho_nonred) + kSlack)
        violation("overall ratio " + format_double(report.overall_ratio) + " above the bound");
    return report;
}

} // namespace testsched
