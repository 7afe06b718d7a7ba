#include "splitlab/format.hpp"

#include <charconv>

namespace splitlab {

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace splitlab
