#ifndef TESTSCHED_ANALYSIS_HPP
#define TESTSCHED_ANALYSIS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "testsched/decomposition.hpp"
#include "testsched/jobs.hpp"

namespace testsched {

// Parameters of the arc-charging analysis of the unit-weight priority
// scheduler. `mu` decides which jobs count as imbalanced (longest operation
// at least mu times the shortest); `nu` decides when one duration is "not
// much smaller" than another.
struct AnalysisParams {
    double mu = 0;
    double nu = 0;

    void validate() const;

    double rho_blue() const { return 1.0 + 1.0 / (mu * nu); }
    double rho_green() const { return 1.0 + 1.0 / (nu + nu * nu); }
    double rho_special() const { return 1.0 + 1.0 / (nu * (mu + 1.0)); }

    // bound on the delay ratio of arcs that are not red
    double rho_nonred() const;
    // bound on the per-group ratio achieved by the charging construction
    double rho_charging() const;
    // ratio bound for a vertex with a single incoming red arc
    double rho_single_red() const;
};

// Directed arc view of an instance: between every two jobs there is one arc,
// directed towards the larger size (ties towards the larger id). Red arcs
// are the ones whose delay ratio may approach 2: the tail is imbalanced, the
// head's test time lands in [nu * m_tail, m_tail], and the head's processing
// time is at least nu times its test time.
struct ArcClassification {
    std::size_t n = 0;
    AnalysisParams params;

    std::vector<double> sigma;            // per-job size
    std::vector<double> longest;          // per-job longest operation
    std::vector<char> imbalanced;         // per-job flag
    std::vector<JobId> imbalance_order;   // imbalanced jobs by longest op
    std::vector<std::size_t> imbalance_rank; // rank in imbalance_order, npos otherwise

    std::vector<char> red_flat;           // n*n, red_flat[tail*n+head]
    std::vector<JobId> red_vertices;      // jobs with incoming red arcs, by test time
    std::vector<std::vector<JobId>> red_tails; // per head, tails by imbalance rank
    std::vector<std::vector<JobId>> green_partners; // per head k, red vertices
                                          // processed before k sharing a tail with k

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool is_red(JobId tail, JobId head) const { return red_flat[tail * n + head] != 0; }
    // true if the arc between a and b points from a to b
    bool arc_from(JobId a, JobId b) const {
        return sigma[a] < sigma[b] || (sigma[a] == sigma[b] && a < b);
    }
    std::size_t red_arc_count() const;
};

ArcClassification classify(const Instance& instance, const AnalysisParams& params);

// One named inequality or structural claim, with how often it was checked
// and the worst ratio observed.
struct CheckStat {
    std::string name;
    double bound = 0;      // 0 when the check is structural
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_ratio = 0;
    std::vector<std::string> details; // one entry per violation

    void count(bool holds, double ratio_seen, const std::string& detail);
};

struct LemmaReport {
    AnalysisParams params;
    std::vector<CheckStat> checks;

    bool ok() const;
    const CheckStat* find(const std::string& name) const;
};

// Asserts, on the concrete instance and the unit-weight priority schedule,
// every per-arc inequality of the analysis: ratio bounds for non-red, red,
// blue, green and dual-role arcs, the optimal-delay lower bounds for blue
// and green arcs, and the structure of the red-tail sets (contiguity in the
// imbalance order, prefix intersections). Violations are reported, never
// thrown: a violation would falsify the analysis.
LemmaReport verify_lemma_bounds(const Instance& instance, const AnalysisParams& params);

// A blue or green arc consumed by the charging construction. Dual-role arcs
// are split into a blue part and a green part whose optimal delays add up to
// the whole arc's; each part keeps the whole arc's delay ratio.
struct ChargedArc {
    JobId a = 0;
    JobId b = 0;
    bool split = false;
    double delay = 0;     // portion of the schedule delay charged here
    double opt_delay = 0; // portion of the optimal delay charged here
};

// The group built around one red vertex: the vertex itself, its incoming red
// arcs, and the green/blue arcs charged with them.
struct ChargeGroup {
    JobId vertex = 0;
    int construction_case = 0; // 0 single red arc, 1 greens only, 2 blues needed
    std::vector<JobId> tails;
    std::vector<ChargedArc> greens;
    std::vector<ChargedArc> blues;
    double delay = 0;
    double opt_delay = 0;
    double ratio = 0;
    double bound = 0;
};

struct ChargingReport {
    AnalysisParams params;
    std::vector<ChargeGroup> groups;
    std::size_t blue_arcs_used = 0;
    std::size_t split_arcs = 0;
    std::size_t invariant_checks = 0;
    std::size_t leftover_arcs = 0;      // arcs outside every group (ratio <= rho_nonred)
    std::size_t leftover_vertices = 0;  // vertices outside every group (ratio 1)
    double leftover_worst_ratio = 0;
    double alg_objective = 0;
    double opt_objective = 0;
    double overall_ratio = 0;   // alg / opt (1 for empty instances)
    double rho_charging = 0;    // bound the groups are checked against
    double rho_nonred = 0;      // bound the leftover arcs are checked against
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Executes the charging construction: processes the red vertices in test-time
// order, grouping each one's incoming red arcs with green arcs to earlier red
// vertices and, when those do not suffice, with unused blue arcs between the
// tails (preferring arcs whose earlier endpoint comes earlier in the
// imbalance order). Verifies the blue-arc budget invariant after every
// vertex, the per-group ratio bounds at the end, and finally that the whole
// schedule's ratio is below max(rho_charging, rho_nonred).
ChargingReport charging(const Instance& instance, const AnalysisParams& params);

} // namespace testsched

#endif
