#ifndef TESTSCHED_DECOMPOSITION_HPP
#define TESTSCHED_DECOMPOSITION_HPP

#include <utility>
#include <vector>

#include "testsched/jobs.hpp"
#include "testsched/schedule.hpp"

namespace testsched {

// Pairwise-delay view of a schedule's objective. With one_sided(k, j) the
// total duration of job k's operations finished before job j completes, the
// objective splits exactly into per-job sizes plus per-pair delays:
//
//   sum_j C_j = sum_j size_j + sum_{j<k} pair_delay(j, k)
//
// The optimal schedule attains pair delay min(size_j, size_k) on every pair.
struct DelayDecomposition {
    std::vector<double> sigma;     // per-job sizes
    std::vector<double> one_sided; // flat n x n, row k, column j = d(k, j)

    std::size_t n() const { return sigma.size(); }

    double d(JobId k, JobId j) const { return one_sided[k * n() + j]; }

    // D(a, b) = d(a, b) + d(b, a)
    double pair_delay(JobId a, JobId b) const { return d(a, b) + d(b, a); }

    // D*(a, b) = min(size_a, size_b)
    double opt_pair_delay(JobId a, JobId b) const {
        return sigma[a] < sigma[b] ? sigma[a] : sigma[b];
    }

    // delay ratio D / D*; pairs with zero optimal delay count as ratio 1
    // when the schedule delay is zero too
    double ratio(JobId a, JobId b) const;

    double total_size() const;
    double total_pair_delay() const;     // sum over unordered pairs of D
    double total_opt_pair_delay() const; // sum over unordered pairs of D*
};

// Computes the matrix of one-sided delays of `schedule` and verifies the
// decomposition identity against the schedule objective (relative tolerance
// 1e-9). The schedule must cover exactly the instance's jobs.
DelayDecomposition decompose(const Schedule& schedule, const Instance& instance);

// Offline optimum: runs the jobs in shortest-size-first order, each test
// immediately followed by its processing part. Returns the schedule and its
// objective.
std::pair<Schedule, double> optimal_schedule(const Instance& instance);

// Same value as optimal_schedule().second, computed from the closed form
// sum_j size_j + sum_{j<k} min(size_j, size_k) after sorting.
double optimal_objective(const Instance& instance);

// Leaf of the two-job decision tree of the priority scheduler with unit
// weight, together with the closed-form pair delay. With the first argument
// the smaller-size job the leaves are:
//   1: [tj pj tk pk]  D = tj + pj
//   2: [tj tk pj pk]  D = tj + pj + tk
//   3: [tj tk pk pj]  D = tj + tk + pk
//   4: [tk tj pj pk]  D = tj + pj + tk
//   5: [tk tj pk pj]  impossible for size_j < size_k
//   6: [tk pk tj pj]  D = tk + pk
struct DelayLeaf {
    int leaf = 0;
    double delay = 0;
};

// Requires size of j strictly smaller than size of k (ties are rejected).
DelayLeaf pairwise_delay_leaf(const Job& j, const Job& k);

// Sum of completion times of the unit-test shortest-first schedule of the
// given processing times: sum_i i * (1 + p_i) with p sorted in descending
// order and i counted from 1.
double uniform_spt_sum(std::vector<double> proc_times);

} // namespace testsched

#endif
