#include "zipfcomp/numfmt.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace zipfcomp {

std::string format_sig12(double value) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.12g", value);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

}  // namespace zipfcomp
