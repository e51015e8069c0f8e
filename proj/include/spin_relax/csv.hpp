#ifndef SPIN_RELAX_CSV_HPP
#define SPIN_RELAX_CSV_HPP

#include <string>
#include <vector>

namespace spinrelax {

// Shortest decimal representation that round-trips to the same double, so
// repeated runs diff cleanly. Infinities print as inf/-inf.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace spinrelax

#endif
