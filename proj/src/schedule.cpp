#include "testsched/schedule.hpp"

#include <cmath>
#include <string>

namespace testsched {

namespace {

void check_structure(const Schedule& s) {
    const std::size_t n = s.job_count();
    std::vector<int> tests_seen(n, 0);
    std::vector<int> procs_seen(n, 0);
    std::vector<double> proc_end(n, 0);

    double prev_end = 0;
    for (std::size_t i = 0; i < s.ops.size(); ++i) {
        const Operation& op = s.ops[i];
        if (op.job >= n) throw std::invalid_argument("operation references unknown job");
        if (op.end < op.start) throw std::invalid_argument("operation ends before it starts");
        if (i == 0) {
            if (op.start != 0) throw std::invalid_argument("schedule must start at time 0");
        } else if (op.start != prev_end) {
            throw std::invalid_argument(op.start < prev_end ? "operations overlap"
                                                            : "schedule contains idle time");
        }
        prev_end = op.end;
        if (op.kind == OpKind::Test) {
            if (tests_seen[op.job]++) throw std::invalid_argument("job tested twice");
            if (procs_seen[op.job]) throw std::invalid_argument("test scheduled after processing");
        } else {
            if (!tests_seen[op.job]) throw std::invalid_argument("processing scheduled before test");
            if (procs_seen[op.job]++) throw std::invalid_argument("job processed twice");
            proc_end[op.job] = op.end;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!tests_seen[j] || !procs_seen[j])
            throw std::invalid_argument("job " + std::to_string(j) + " is missing an operation");
        if (std::isnan(s.completion[j]) || s.completion[j] != proc_end[j])
            throw std::invalid_argument("completion time inconsistent with processing end");
    }
}

} // namespace

double objective(const Schedule& schedule) {
    check_structure(schedule);
    double sum = 0;
    for (double c : schedule.completion) sum += c;
    return sum;
}

void validate_schedule(const Schedule& schedule, const Instance& instance) {
    instance.validate();
    if (schedule.job_count() != instance.size())
        throw std::invalid_argument("schedule and instance job counts differ");
    check_structure(schedule);
    for (const Operation& op : schedule.ops) {
        const Job& job = instance[op.job];
        const double want = op.kind == OpKind::Test ? job.test_time : job.proc_time;
        // end - start picks up rounding proportional to the clock value
        const double tolerance = 1e-9 * std::max(1.0, std::abs(op.end));
        if (std::abs(op.duration() - want) > tolerance)
            throw std::invalid_argument("operation duration does not match the job");
    }
}

} // namespace testsched
