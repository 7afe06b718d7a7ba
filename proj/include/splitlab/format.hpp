#pragma once

#include <string>

namespace splitlab {

// Shortest round-trip decimal representation; stable across runs.
std::string fmt(double v);

} // namespace splitlab
