#pragma once

#include <functional>
#include <string>
#include <vector>

namespace splitlab {

/// Uniform 1-D grid: n_cells intervals of width dx, n_cells + 1 nodes.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 2;
    double dx = 0.5;

    Grid1D() = default;
    Grid1D(double x_min, double x_max, int n_cells);

    int n_nodes() const { return n_cells + 1; }
    // node(i) = x_min + i*dx, reproducible bit-for-bit for i = 0..n_cells.
    double node(int i) const { return x_min + i * dx; }

    bool operator==(const Grid1D&) const = default;
};

/// Concentration values sampled at the grid nodes at a given time.
struct Field {
    Grid1D grid;
    std::vector<double> values;
    double time = 0.0;

    Field() = default;
    explicit Field(const Grid1D& g, double fill = 0.0, double t = 0.0);

    int size() const { return static_cast<int>(values.size()); }
    bool all_finite() const;
};

/// Dirichlet data at both domain ends, optionally time dependent.
///
/// `apply` overwrites the two boundary nodes with the values at the field's
/// current time. The optional rate functions are the time derivatives of the
/// boundary data; derivative maps freeze the boundary rows (rate 0) when they
/// are absent.
struct DirichletBC {
    std::function<double(double)> left;
    std::function<double(double)> right;
    std::function<double(double)> left_rate;
    std::function<double(double)> right_rate;

    static DirichletBC constant(double left_value, double right_value);

    bool time_dependent() const {
        return static_cast<bool>(left_rate) || static_cast<bool>(right_rate);
    }
    void apply(Field& f) const;
    double rate_left(double t) const { return left_rate ? left_rate(t) : 0.0; }
    double rate_right(double t) const { return right_rate ? right_rate(t) : 0.0; }
};

/// Named initial profiles.
struct Profile {
    enum class Kind {
        paper_sine,  // 1 + 0.9 sin(x)
        sine,        // amplitude * sin(x), zero boundary data
        wave_front,  // traveling-front shape (1 + k exp(direction*x/sqrt 6))^-2
        constant,
    };
    Kind kind = Kind::paper_sine;
    double value = 1.0;          // constant level
    double amplitude = 0.9;      // sine amplitude
    double wave_k = 1.0;         // front shape parameter, > 0
    double wave_direction = 1.0; // +1: front decays to the right

    // Accepts "paper-sine", "sine[:amplitude]", "constant[:value]",
    // "wave-front[:k]". Unknown names raise ConfigError.
    static Profile parse(const std::string& spec);
    std::string name() const;
};

// Samples the profile at every node at time 0. Sine-based profiles pin nodes
// sitting on integer multiples of pi to their analytic values, so domains
// like [0, 4*pi] get exact boundary data.
Field make_initial_field(const Grid1D& grid, const Profile& profile);

// Discrete maximum-norm distance. Throws DimensionError on mismatched grids.
double max_norm_diff(const Field& a, const Field& b);

} // namespace splitlab
