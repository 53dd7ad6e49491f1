#include "testsched/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace testsched {

double DelayDecomposition::ratio(JobId a, JobId b) const {
    const double opt = opt_pair_delay(a, b);
    const double alg = pair_delay(a, b);
    if (opt <= 0) return alg <= 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return alg / opt;
}

double DelayDecomposition::total_size() const {
    double sum = 0;
    for (double s : sigma) sum += s;
    return sum;
}

double DelayDecomposition::total_pair_delay() const {
    double sum = 0;
    for (JobId a = 0; a < n(); ++a)
        for (JobId b = a + 1; b < n(); ++b) sum += pair_delay(a, b);
    return sum;
}

double DelayDecomposition::total_opt_pair_delay() const {
    double sum = 0;
    for (JobId a = 0; a < n(); ++a)
        for (JobId b = a + 1; b < n(); ++b) sum += opt_pair_delay(a, b);
    return sum;
}

DelayDecomposition decompose(const Schedule& schedule, const Instance& instance) {
    validate_schedule(schedule, instance);
    const std::size_t n = instance.size();
    DelayDecomposition dec;
    dec.sigma.reserve(n);
    for (const Job& job : instance.jobs) dec.sigma.push_back(job.size());
    dec.one_sided.assign(n * n, 0.0);

    for (JobId j = 0; j < n; ++j) {
        const double done = schedule.completion[j];
        for (const Operation& op : schedule.ops) {
            if (op.job == j) continue;
            // operations never straddle a completion time on one machine
            if (op.end <= done) dec.one_sided[op.job * n + j] += op.duration();
        }
    }

    const double direct = objective(schedule);
    const double decomposed = dec.total_size() + dec.total_pair_delay();
    const double tolerance = 1e-9 * std::max(1.0, std::abs(direct));
    if (std::abs(direct - decomposed) > tolerance)
        throw std::logic_error("delay decomposition does not add up to the objective");
    return dec;
}

std::pair<Schedule, double> optimal_schedule(const Instance& instance) {
    instance.validate();
    std::vector<std::pair<double, JobId>> order;
    order.reserve(instance.size());
    for (const Job& job : instance.jobs) order.emplace_back(job.size(), job.id);
    std::sort(order.begin(), order.end());

    ScheduleBuilder builder(instance.size());
    for (const auto& [size, j] : order) {
        builder.append(j, OpKind::Test, instance[j].test_time);
        builder.append(j, OpKind::Processing, instance[j].proc_time);
    }
    Schedule schedule = builder.take();
    const double value = instance.empty() ? 0.0 : objective(schedule);
    return {std::move(schedule), value};
}

double optimal_objective(const Instance& instance) {
    std::vector<double> sizes;
    sizes.reserve(instance.size());
    for (const Job& job : instance.jobs) sizes.push_back(job.size());
    std::sort(sizes.begin(), sizes.end());
    // sum of sizes plus sum over pairs of the smaller size
    double sum = 0;
    const std::size_t n = sizes.size();
    for (std::size_t i = 0; i < n; ++i) sum += static_cast<double>(n - i) * sizes[i];
    return sum;
}

DelayLeaf pairwise_delay_leaf(const Job& j, const Job& k) {
    if (!(j.size() < k.size()))
        throw std::invalid_argument("pairwise_delay_leaf requires the first job strictly smaller");
    // mirror the simulator's tie rule: equal priorities go to the smaller id
    const auto runs_before = [](double a, JobId ida, double b, JobId idb) {
        return a < b || (a == b && ida < idb);
    };
    const double tj = j.test_time, pj = j.proc_time;
    const double tk = k.test_time, pk = k.proc_time;
    if (runs_before(tj, j.id, tk, k.id)) {
        if (runs_before(pj, j.id, tk, k.id)) return {1, tj + pj};
        if (runs_before(pj, j.id, pk, k.id)) return {2, tj + pj + tk};
        return {3, tj + tk + pk};
    }
    if (runs_before(tj, j.id, pk, k.id)) {
        if (runs_before(pj, j.id, pk, k.id)) return {4, tj + pj + tk};
        return {5, tj + tk + pk}; // not reachable when j is the smaller job
    }
    return {6, tk + pk};
}

double uniform_spt_sum(std::vector<double> proc_times) {
    std::sort(proc_times.begin(), proc_times.end(), std::greater<double>());
    double sum = 0;
    for (std::size_t i = 0; i < proc_times.size(); ++i)
        sum += static_cast<double>(i + 1) * (1.0 + proc_times[i]);
    return sum;
}

} // namespace testsched
