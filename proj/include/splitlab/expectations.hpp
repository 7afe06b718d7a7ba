#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace splitlab {

/// One cell of a shipped expectations table: the value the experiment preset
/// is expected to reproduce, plus the acceptance interval it is gated on.
/// Cells without a published value are computed and reported anyway; cells
/// without a band are reported but not gated.
struct ExpectedCell {
    std::string_view scheme;     // seq, sw, ms
    std::string_view integrator; // euler, midpoint, heun3, rk4
    std::optional<double> published;
    std::optional<double> band_lo;
    std::optional<double> band_hi;

    bool gated() const { return band_lo.has_value(); }
    bool within_band(double measured) const {
        return !gated() || (measured >= *band_lo && measured <= *band_hi);
    }
};

struct TableExpectations {
    int id;
    std::string_view title;
    std::vector<ExpectedCell> cells;

    const ExpectedCell* find(std::string_view scheme, std::string_view integrator) const;
};

// Tables 1..5 of the shipped experiment presets.
const TableExpectations& published_table(int id); // throws ConfigError

} // namespace splitlab
