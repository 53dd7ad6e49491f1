#ifndef TESTSCHED_JOBS_HPP
#define TESTSCHED_JOBS_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace testsched {

using JobId = std::size_t;

// A job consists of a test followed by a processing part. The test duration
// is known upfront; the processing duration becomes known only once the test
// has completed.
struct Job {
    JobId id = 0;
    double test_time = 0;
    double proc_time = 0;

    // total size: the time the job occupies the machine in any schedule
    double size() const { return test_time + proc_time; }
    double longest_op() const { return test_time > proc_time ? test_time : proc_time; }
    double shortest_op() const { return test_time < proc_time ? test_time : proc_time; }
};

// An ordered list of jobs. The order is part of the input: it is how an
// adversary presents the jobs and how in-order algorithms traverse them.
struct Instance {
    std::vector<Job> jobs;

    std::size_t size() const { return jobs.size(); }
    bool empty() const { return jobs.empty(); }
    const Job& operator[](JobId j) const { return jobs[j]; }

    void push(double test_time, double proc_time) {
        if (test_time < 0 || proc_time < 0)
            throw std::invalid_argument("job durations must be nonnegative");
        jobs.push_back(Job{jobs.size(), test_time, proc_time});
    }

    static Instance from_pairs(std::initializer_list<std::pair<double, double>> list) {
        Instance inst;
        for (const auto& [t, p] : list) inst.push(t, p);
        return inst;
    }

    // ids must equal positions and durations must be nonnegative
    void validate() const {
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].id != i)
                throw std::invalid_argument("job ids must match list positions");
            if (jobs[i].test_time < 0 || jobs[i].proc_time < 0)
                throw std::invalid_argument("job durations must be nonnegative");
        }
    }

    bool operator==(const Instance& other) const {
        if (jobs.size() != other.jobs.size()) return false;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].id != other.jobs[i].id ||
                jobs[i].test_time != other.jobs[i].test_time ||
                jobs[i].proc_time != other.jobs[i].proc_time)
                return false;
        }
        return true;
    }
};

} // namespace testsched

#endif
