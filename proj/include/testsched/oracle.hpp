#ifndef TESTSCHED_ORACLE_HPP
#define TESTSCHED_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "testsched/jobs.hpp"

namespace testsched {

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Gatekeeper for processing times. A simulation may look at a job's
// processing time only after the job's test has completed; earlier queries
// fail loudly and are counted in the audit.
//
// In adaptive mode the processing time is decided the moment the test
// finishes, as a function of how many jobs have been tested so far. This is
// how an adaptive adversary is wired into the same simulator code path.
class RevelationOracle {
public:
    static RevelationOracle for_instance(const Instance& instance) {
        RevelationOracle o(instance.size());
        o.hidden_.reserve(instance.size());
        for (const Job& j : instance.jobs) o.hidden_.push_back(j.proc_time);
        return o;
    }

    static RevelationOracle adaptive(std::size_t job_count,
                                     std::function<double(std::size_t reveal_index, JobId)> rule) {
        RevelationOracle o(job_count);
        o.rule_ = std::move(rule);
        return o;
    }

    // Called by the simulator at the instant job `j`'s test completes.
    double reveal(JobId j) {
        check_id(j);
        if (revealed_[j]) throw ContractViolation("job tested twice");
        double p = rule_ ? rule_(order_.size(), j) : hidden_[j];
        if (p < 0) throw ContractViolation("revealed processing time is negative");
        value_[j] = p;
        revealed_[j] = 1;
        order_.push_back(j);
        return p;
    }

    double processing_time(JobId j) const {
        check_id(j);
        if (!revealed_[j]) {
            ++violations_;
            throw ContractViolation("processing time queried before the test completed");
        }
        return value_[j];
    }

    bool is_revealed(JobId j) const {
        check_id(j);
        return revealed_[j] != 0;
    }

    std::size_t job_count() const { return revealed_.size(); }
    const std::vector<JobId>& reveal_order() const { return order_; }
    std::size_t violation_count() const { return violations_; }

    // Instance with the revealed processing times; requires every job revealed.
    Instance realized_instance(const std::vector<double>& test_times) const {
        if (test_times.size() != revealed_.size())
            throw std::invalid_argument("test time count mismatch");
        Instance inst;
        for (std::size_t j = 0; j < revealed_.size(); ++j) {
            if (!revealed_[j]) throw ContractViolation("job was never tested");
            inst.push(test_times[j], value_[j]);
        }
        return inst;
    }

private:
    explicit RevelationOracle(std::size_t n)
        : value_(n, 0), revealed_(n, 0) {}

    void check_id(JobId j) const {
        if (j >= revealed_.size()) throw std::invalid_argument("job id out of range");
    }

    std::vector<double> hidden_;
    std::function<double(std::size_t, JobId)> rule_;
    std::vector<double> value_;
    std::vector<char> revealed_;
    std::vector<JobId> order_;
    mutable std::size_t violations_ = 0;
};

} // namespace testsched

#endif
