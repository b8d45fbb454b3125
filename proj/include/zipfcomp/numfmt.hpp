#pragma once

#include <string>

namespace zipfcomp {

/// Fixed 12-significant-digit decimal ("%.12g"); used for every CSV report column.
std::string format_sig12(double value);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

}  // namespace zipfcomp
