#include "splitlab/integrators.hpp"

#include <cmath>

#include "splitlab/errors.hpp"

namespace splitlab {

void ButcherTableau::validate() const {
    const size_t s = b.size();
    if (s == 0 || a.size() != s || c.size() != s)
        throw ConfigError("tableau '" + name + "': inconsistent stage counts");
    if (order < 1 || order > 4)
        throw ConfigError("tableau '" + name + "': order out of range 1..4");
    double sum = 0.0;
    for (double w : b) sum += w;
    if (std::abs(sum - 1.0) > 1e-14)
        throw ConfigError("tableau '" + name + "': weights do not sum to 1");
    for (size_t j = 0; j < s; ++j) {
        if (a[j].size() != s)
            throw ConfigError("tableau '" + name + "': ragged coefficient matrix");
        for (size_t k = j; k < s; ++k)
            if (a[j][k] != 0.0)
                throw ConfigError("tableau '" + name + "': not strictly lower triangular");
    }
}

const ButcherTableau& ButcherTableau::euler() {
    static const ButcherTableau t{"euler", 1, {{0.0}}, {1.0}, {0.0}};
    return t;
}

const ButcherTableau& ButcherTableau::midpoint() {
    static const ButcherTableau t{"midpoint",
                                  2,
                                  {{0.0, 0.0}, {0.5, 0.0}},
                                  {0.0, 1.0},
                                  {0.0, 0.5}};
    return t;
}

const ButcherTableau& ButcherTableau::heun3() {
    static const ButcherTableau t{
        "heun3",
        3,
        {{0.0, 0.0, 0.0}, {1.0 / 3.0, 0.0, 0.0}, {0.0, 2.0 / 3.0, 0.0}},
        {0.25, 0.0, 0.75},
        {0.0, 1.0 / 3.0, 2.0 / 3.0}};
    return t;
}

const ButcherTableau& ButcherTableau::rk4() {
    static const ButcherTableau t{"rk4",
                                  4,
                                  {{0.0, 0.0, 0.0, 0.0},
                                   {0.5, 0.0, 0.0, 0.0},
                                   {0.0, 0.5, 0.0, 0.0},
                                   {0.0, 0.0, 1.0, 0.0}},
                                  {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
                                  {0.0, 0.5, 0.5, 1.0}};
    return t;
}

const ButcherTableau& ButcherTableau::by_name(std::string_view name) {
    if (name == "euler") return euler();
    if (name == "midpoint" || name == "improved-euler") return midpoint();
    if (name == "heun3") return heun3();
    if (name == "rk4") return rk4();
    throw ConfigError("unknown integrator '" + std::string(name) +
                      "' (expected euler, midpoint, heun3, rk4)");
}

const std::vector<std::string>& ButcherTableau::names() {
    static const std::vector<std::string> n{"euler", "midpoint", "heun3", "rk4"};
    return n;
}

double ButcherTableau::amplification(double z) const {
    // Stage values of one step applied to y' = z*y with y0 = 1, h = 1.
    const int s = stages();
    std::vector<double> k(s);
    for (int j = 0; j < s; ++j) {
        double yj = 1.0;
        for (int m = 0; m < j; ++m) yj += a[j][m] * k[m];
        k[j] = z * yj;
    }
    double y = 1.0;
    for (int j = 0; j < s; ++j) y += b[j] * k[j];
    return y;
}

double ButcherTableau::real_stability_limit() const {
    // March out until |R(-m)| exceeds 1; resolution 1e-4 is plenty for the
    // step-size filter this feeds.
    const double step = 1e-4;
    double m = step;
    while (m < 16.0 && std::abs(amplification(-m)) <= 1.0 + 1e-12) m += step;
    return m - step;
}

void rk_step(const ButcherTableau& tab, const VectorDerivative& f, double t,
             double h, std::vector<double>& y) {
    const int s = tab.stages();
    const size_t n = y.size();
    std::vector<std::vector<double>> k(s);
    std::vector<double> stage(n);
    for (int j = 0; j < s; ++j) {
        stage = y;
        for (int m = 0; m < j; ++m) {
            if (tab.a[j][m] == 0.0) continue;
            const double w = h * tab.a[j][m];
            for (size_t i = 0; i < n; ++i) stage[i] += w * k[m][i];
        }
        k[j].assign(n, 0.0);
        f(t + tab.c[j] * h, stage, k[j]);
        for (size_t i = 0; i < n; ++i)
            if (!std::isfinite(k[j][i]))
                throw OverflowError("non-finite value in stage " +
                                    std::to_string(j + 1) + " of " + tab.name);
    }
    for (int j = 0; j < s; ++j) {
        const double w = h * tab.b[j];
        for (size_t i = 0; i < n; ++i) y[i] += w * k[j][i];
    }
}

namespace {

VectorDerivative wrap_field_derivative(const FieldDerivative& d, const Grid1D& grid) {
    return [&d, grid](double t, const std::vector<double>& y, std::vector<double>& dydt) {
        Field stage;
        stage.grid = grid;
        stage.values = y;
        stage.time = t;
        Field out = d(stage);
        dydt = std::move(out.values);
    };
}

} // namespace

Field step(const ButcherTableau& tab, const FieldDerivative& derivative,
           const Field& f, double h, const DirichletBC* bc) {
    if (!(h > 0.0)) throw ConfigError("step: h must be positive");
    Field out = f;
    rk_step(tab, wrap_field_derivative(derivative, f.grid), f.time, h, out.values);
    out.time = f.time + h;
    if (bc) bc->apply(out);
    return out;
}

Field integrate(const ButcherTableau& tab, const FieldDerivative& derivative,
                Field f, double total, int n_substeps, const DirichletBC* bc) {
    if (!(total > 0.0)) throw ConfigError("integrate: total time must be positive");
    if (n_substeps < 1) throw ConfigError("integrate: need at least one substep");
    const double t0 = f.time;
    const double h = total / n_substeps;
    for (int i = 0; i < n_substeps; ++i) {
        f = step(tab, derivative, f, h, bc);
        f.time = t0 + (i + 1) * h;
    }
    f.time = t0 + total;
    if (bc) bc->apply(f);
    if (!f.all_finite())
        throw OverflowError("integrate: state overflowed with " + tab.name);
    return f;
}

} // namespace splitlab
