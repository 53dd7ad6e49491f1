#ifndef TESTSCHED_ALGORITHMS_HPP
#define TESTSCHED_ALGORITHMS_HPP

#include <string>
#include <vector>

#include "testsched/jobs.hpp"
#include "testsched/oracle.hpp"
#include "testsched/schedule.hpp"

namespace testsched {

enum class AlgorithmKind { BetaSort, Sidle, TestAllThenSpt, ImmediateInOrder };

struct AlgorithmSpec {
    AlgorithmKind kind = AlgorithmKind::BetaSort;
    double beta = 1.0;      // BetaSort priority weight on test times
    double threshold = 1.0; // Sidle cutoff between immediate and deferred jobs

    std::string name() const;
    static AlgorithmSpec parse(const std::string& name, double beta, double threshold);
};

// Record of one executed operation of the priority-queue scheduler, for
// auditing queue behaviour in tests. `inserted_at` is the number of
// operations that had been executed when this entry joined the queue.
struct QueueTraceEntry {
    double priority = 0;
    JobId job = 0;
    OpKind kind = OpKind::Test;
    std::size_t inserted_at = 0;
};

// Priority-queue scheduler: every test starts in the queue with priority
// beta * test_time; completing a test inserts the processing part with the
// just-revealed processing time as priority. Always runs the minimum-priority
// operation; ties go to the smaller job id.
Schedule beta_sort(const std::vector<double>& test_times, RevelationOracle& oracle,
                   double beta, std::vector<QueueTraceEntry>* trace = nullptr);
Schedule beta_sort(const Instance& instance, double beta);

// Threshold scheduler for uniform test times: tests jobs in input order and
// runs a processing part immediately iff it is at most `threshold`; all
// deferred parts run at the end in shortest-first order.
Schedule sidle(const std::vector<double>& test_times, RevelationOracle& oracle, double threshold);
Schedule sidle(const Instance& instance, double threshold);

// Tests everything first, then runs all processing parts shortest-first.
Schedule test_all_then_spt(const std::vector<double>& test_times, RevelationOracle& oracle);
Schedule test_all_then_spt(const Instance& instance);

// Tests jobs in input order, each processing part immediately after its test.
Schedule immediate_in_order(const std::vector<double>& test_times, RevelationOracle& oracle);
Schedule immediate_in_order(const Instance& instance);

Schedule run_algorithm(const AlgorithmSpec& spec, const std::vector<double>& test_times,
                       RevelationOracle& oracle);
Schedule run_algorithm(const AlgorithmSpec& spec, const Instance& instance);

// Sum of completion times of the preemptive equal-rate schedule that treats
// each job as one entity of its total size. Only the objective is defined;
// there is no non-preemptive trace.
double round_robin_objective(const Instance& instance);

} // namespace testsched

#endif
