#pragma once

#include <charconv>
#include <string>

namespace bearnav {

// Shortest round-trip decimal form; keeps text artifacts byte-stable.
inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace bearnav
