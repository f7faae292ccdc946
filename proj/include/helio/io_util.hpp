#ifndef HELIO_IO_UTIL_HPP
#define HELIO_IO_UTIL_HPP

#include <string>

namespace helio {

// 17 significant digits: enough to round-trip any double, so repeated runs
// produce byte-identical text output.
std::string format_double(double v);

}  // namespace helio

#endif  // HELIO_IO_UTIL_HPP
