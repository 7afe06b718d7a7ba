#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "splitlab/grid.hpp"

namespace splitlab {

/// Coefficients of an explicit one-step method.
struct ButcherTableau {
    std::string name;
    int order = 1;
    std::vector<std::vector<double>> a; // strictly lower triangular
    std::vector<double> b;              // weights, sum 1
    std::vector<double> c;              // nodes

    int stages() const { return static_cast<int>(b.size()); }
    void validate() const; // throws ConfigError

    static const ButcherTableau& euler();
    static const ButcherTableau& midpoint(); // improved Euler
    static const ButcherTableau& heun3();
    static const ButcherTableau& rk4();

    // "euler", "midpoint" (alias "improved-euler"), "heun3", "rk4".
    static const ButcherTableau& by_name(std::string_view name);
    static const std::vector<std::string>& names();

    // Stability polynomial R(z) applied to a real z.
    double amplification(double z) const;
    // Largest m such that |R(z)| <= 1 for all z in [-m, 0]
    // (euler/midpoint: 2, heun3: ~2.513, rk4: ~2.785).
    double real_stability_limit() const;
};

// Derivative of a raw state vector; t is the stage time.
using VectorDerivative =
    std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;

// One explicit RK step on a raw vector, in place. Throws OverflowError naming
// the stage when a stage derivative turns non-finite.
void rk_step(const ButcherTableau& tab, const VectorDerivative& f, double t,
             double h, std::vector<double>& y);

// Derivative of a Field; the field's time member carries the stage time.
using FieldDerivative = std::function<Field(const Field&)>;

// One explicit RK step of size h; the boundary is re-imposed afterward when a
// BC is given.
Field step(const ButcherTableau& tab, const FieldDerivative& derivative,
           const Field& f, double h, const DirichletBC* bc = nullptr);

// n_substeps equal steps covering `total`; final time is set to
// f.time + total exactly.
Field integrate(const ButcherTableau& tab, const FieldDerivative& derivative,
                Field f, double total, int n_substeps,
                const DirichletBC* bc = nullptr);

} // namespace splitlab
