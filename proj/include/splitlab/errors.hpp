#pragma once

#include <stdexcept>

namespace splitlab {

// Bad run configuration: unknown names, inconsistent scheme/operator
// combinations, non-integral step counts. Mapped to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched grids, or a field too short for a stencil.
class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A closed-form flow left its domain of validity (denominator crossed zero).
// Mapped to CLI exit code 3.
class BlowUpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical stage produced a non-finite value. Mapped to CLI exit code 3.
class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Too few usable ladder points remain for an order fit.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace splitlab
