#ifndef TESTSCHED_SCHEDULE_HPP
#define TESTSCHED_SCHEDULE_HPP

#include <limits>
#include <vector>

#include "testsched/jobs.hpp"

namespace testsched {

enum class OpKind { Test, Processing };

struct Operation {
    JobId job = 0;
    OpKind kind = OpKind::Test;
    double start = 0;
    double end = 0;

    double duration() const { return end - start; }
};

// A single-machine timeline. Operations are stored in execution order and are
// work-conserving: the first operation starts at time 0 and each operation
// starts exactly when the previous one ends.
struct Schedule {
    std::vector<Operation> ops;
    std::vector<double> completion; // per job id, end of its processing part

    std::size_t job_count() const { return completion.size(); }
};

// Sum of completion times. Throws std::invalid_argument if the schedule is
// structurally broken (overlapping operations, processing before test,
// missing operations, inconsistent completion times).
double objective(const Schedule& schedule);

// Full invariant check against the instance the schedule claims to cover:
// exactly one test and one processing part per job, durations equal to the
// job's test/processing times, no idle time.
void validate_schedule(const Schedule& schedule, const Instance& instance);

// Appends operations back to back, accumulating the clock.
class ScheduleBuilder {
public:
    explicit ScheduleBuilder(std::size_t job_count) {
        schedule_.completion.assign(job_count, std::numeric_limits<double>::quiet_NaN());
        schedule_.ops.reserve(2 * job_count);
    }

    double now() const { return now_; }

    void append(JobId job, OpKind kind, double duration) {
        schedule_.ops.push_back(Operation{job, kind, now_, now_ + duration});
        now_ += duration;
        if (kind == OpKind::Processing) schedule_.completion[job] = now_;
    }

    Schedule take() { return std::move(schedule_); }

private:
    Schedule schedule_;
    double now_ = 0;
};

} // namespace testsched

#endif
