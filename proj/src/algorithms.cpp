#include "testsched/algorithms.hpp"

#include <algorithm>
#include <iostream>
#include <queue>
#include <stdexcept>

namespace testsched {

namespace {

std::vector<double> test_times_of(const Instance& instance) {
    std::vector<double> t;
    t.reserve(instance.size());
    for (const Job& job : instance.jobs) t.push_back(job.test_time);
    return t;
}

struct QueuedOp {
    double priority;
    JobId job;
    OpKind kind;
    std::size_t inserted_at;
};

// min-heap order: smallest priority first, ties to the smaller job id
struct QueuedOpAfter {
    bool operator()(const QueuedOp& a, const QueuedOp& b) const {
        if (a.priority != b.priority) return a.priority > b.priority;
        return a.job > b.job;
    }
};

void warn_nonuniform_tests(const std::vector<double>& test_times, const char* who) {
    for (double t : test_times) {
        if (t != 1.0) {
            std::cerr << who << ": test times are not all 1; the ratio bound assumes uniform tests\n";
            return;
        }
    }
}

} // namespace

std::string AlgorithmSpec::name() const {
    switch (kind) {
        case AlgorithmKind::BetaSort: return "beta-sort";
        case AlgorithmKind::Sidle: return "sidle";
        case AlgorithmKind::TestAllThenSpt: return "test-all-spt";
        case AlgorithmKind::ImmediateInOrder: return "immediate";
    }
    return "?";
}

AlgorithmSpec AlgorithmSpec::parse(const std::string& name, double beta, double threshold) {
    AlgorithmSpec spec;
    spec.beta = beta;
    spec.threshold = threshold;
    if (name == "beta-sort") spec.kind = AlgorithmKind::BetaSort;
    else if (name == "sidle") spec.kind = AlgorithmKind::Sidle;
    else if (name == "test-all-spt") spec.kind = AlgorithmKind::TestAllThenSpt;
    else if (name == "immediate") spec.kind = AlgorithmKind::ImmediateInOrder;
    else throw std::invalid_argument("unknown algorithm: " + name);
    if (spec.kind == AlgorithmKind::BetaSort && !(beta > 0))
        throw std::invalid_argument("beta must be positive");
    if (spec.kind == AlgorithmKind::Sidle && !(threshold > 0))
        throw std::invalid_argument("threshold must be positive");
    return spec;
}

Schedule beta_sort(const std::vector<double>& test_times, RevelationOracle& oracle,
                   double beta, std::vector<QueueTraceEntry>* trace) {
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    const std::size_t n = test_times.size();
    std::priority_queue<QueuedOp, std::vector<QueuedOp>, QueuedOpAfter> queue;
    for (JobId j = 0; j < n; ++j) queue.push(QueuedOp{beta * test_times[j], j, OpKind::Test, 0});

    ScheduleBuilder builder(n);
    std::size_t executed = 0;
    while (!queue.empty()) {
        const QueuedOp op = queue.top();
        queue.pop();
        if (trace) trace->push_back(QueueTraceEntry{op.priority, op.job, op.kind, op.inserted_at});
        if (op.kind == OpKind::Test) {
            builder.append(op.job, OpKind::Test, test_times[op.job]);
            const double p = oracle.reveal(op.job);
            ++executed;
            queue.push(QueuedOp{p, op.job, OpKind::Processing, executed});
        } else {
            builder.append(op.job, OpKind::Processing, oracle.processing_time(op.job));
            ++executed;
        }
    }
    return builder.take();
}

Schedule beta_sort(const Instance& instance, double beta) {
    auto oracle = RevelationOracle::for_instance(instance);
    return beta_sort(test_times_of(instance), oracle, beta);
}

Schedule sidle(const std::vector<double>& test_times, RevelationOracle& oracle, double threshold) {
    if (!(threshold > 0)) throw std::invalid_argument("threshold must be positive");
    warn_nonuniform_tests(test_times, "sidle");
    const std::size_t n = test_times.size();
    ScheduleBuilder builder(n);
    std::vector<std::pair<double, JobId>> deferred;
    for (JobId j = 0; j < n; ++j) {
        builder.append(j, OpKind::Test, test_times[j]);
        const double p = oracle.reveal(j);
        if (p <= threshold)
            builder.append(j, OpKind::Processing, p);
        else
            deferred.emplace_back(p, j);
    }
    std::sort(deferred.begin(), deferred.end());
    for (const auto& [p, j] : deferred) builder.append(j, OpKind::Processing, p);
    return builder.take();
}

Schedule sidle(const Instance& instance, double threshold) {
    auto oracle = RevelationOracle::for_instance(instance);
    return sidle(test_times_of(instance), oracle, threshold);
}

Schedule test_all_then_spt(const std::vector<double>& test_times, RevelationOracle& oracle) {
    const std::size_t n = test_times.size();
    ScheduleBuilder builder(n);
    std::vector<std::pair<double, JobId>> parts;
    parts.reserve(n);
    for (JobId j = 0; j < n; ++j) {
        builder.append(j, OpKind::Test, test_times[j]);
        parts.emplace_back(oracle.reveal(j), j);
    }
    std::sort(parts.begin(), parts.end());
    for (const auto& [p, j] : parts) builder.append(j, OpKind::Processing, p);
    return builder.take();
}

Schedule test_all_then_spt(const Instance& instance) {
    auto oracle = RevelationOracle::for_instance(instance);
    return test_all_then_spt(test_times_of(instance), oracle);
}

Schedule immediate_in_order(const std::vector<double>& test_times, RevelationOracle& oracle) {
    const std::size_t n = test_times.size();
    ScheduleBuilder builder(n);
    for (JobId j = 0; j < n; ++j) {
        builder.append(j, OpKind::Test, test_times[j]);
        builder.append(j, OpKind::Processing, oracle.reveal(j));
    }
    return builder.take();
}

Schedule immediate_in_order(const Instance& instance) {
    auto oracle = RevelationOracle::for_instance(instance);
    return immediate_in_order(test_times_of(instance), oracle);
}

Schedule run_algorithm(const AlgorithmSpec& spec, const std::vector<double>& test_times,
                       RevelationOracle& oracle) {
    switch (spec.kind) {
        case AlgorithmKind::BetaSort: return beta_sort(test_times, oracle, spec.beta);
        case AlgorithmKind::Sidle: return sidle(test_times, oracle, spec.threshold);
        case AlgorithmKind::TestAllThenSpt: return test_all_then_spt(test_times, oracle);
        case AlgorithmKind::ImmediateInOrder: return immediate_in_order(test_times, oracle);
    }
    throw std::logic_error("unreachable");
}

Schedule run_algorithm(const AlgorithmSpec& spec, const Instance& instance) {
    auto oracle = RevelationOracle::for_instance(instance);
    return run_algorithm(spec, test_times_of(instance), oracle);
}

double round_robin_objective(const Instance& instance) {
    const std::size_t n = instance.size();
    std::vector<double> sizes;
    sizes.reserve(n);
    for (const Job& job : instance.jobs) sizes.push_back(job.size());
    std::sort(sizes.begin(), sizes.end());
    // with k entities left, the machine serves each at rate 1/k
    double sum = 0, finish = 0, served = 0;
    for (std::size_t i = 0; i < n; ++i) {
        finish += static_cast<double>(n - i) * (sizes[i] - served);
        served = sizes[i];
        sum += finish;
    }
    return sum;
}

} // namespace testsched
