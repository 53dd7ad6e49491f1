#include "testsched/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace testsched {

namespace {

bool parse_double(std::string_view text, double& out) {
    // trim surrounding blanks
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return false;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

Instance read_instance(std::istream& in) {
    Instance inst;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view(line);
        while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) view.remove_prefix(1);
        if (view.empty() || view.front() == '#') continue;
        const auto comma = view.find(',');
        double t = 0, p = 0;
        if (comma == std::string_view::npos || !parse_double(view.substr(0, comma), t) ||
            !parse_double(view.substr(comma + 1), p) || t < 0 || p < 0) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected `t,p` with nonnegative decimals");
        }
        inst.push(t, p);
    }
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
    out << "# t,p per job, one per line\n";
    for (const Job& job : instance.jobs)
        out << format_double(job.test_time) << ',' << format_double(job.proc_time) << '\n';
}

void write_instance_file(const std::string& path, const Instance& instance) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    write_instance(out, instance);
}

void write_schedule_csv(std::ostream& out, const Schedule& schedule) {
    out << "job_id,kind,start,end\n";
    for (const Operation& op : schedule.ops) {
        out << op.job << ',' << (op.kind == OpKind::Test ? "test" : "processing") << ','
            << format_double(op.start) << ',' << format_double(op.end) << '\n';
    }
}

} // namespace testsched
