#ifndef TESTSCHED_IO_HPP
#define TESTSCHED_IO_HPP

#include <iosfwd>
#include <string>

#include "testsched/jobs.hpp"
#include "testsched/schedule.hpp"

namespace testsched {

// Instance files: one `t,p` pair of decimal literals per line, lines starting
// with `#` ignored, job id = zero-based index among the non-comment lines.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);
void write_instance_file(const std::string& path, const Instance& instance);

// Schedule traces: CSV with header `job_id,kind,start,end`, kind is `test`
// or `processing`.
void write_schedule_csv(std::ostream& out, const Schedule& schedule);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

} // namespace testsched

#endif
