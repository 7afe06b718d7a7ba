#include "splitlab/grid.hpp"

#include <cmath>
#include <numbers>

#include "splitlab/errors.hpp"
#include "splitlab/waves.hpp"

namespace splitlab {

Grid1D::Grid1D(double x_min_, double x_max_, int n_cells_)
    : x_min(x_min_), x_max(x_max_), n_cells(n_cells_) {
    if (!(x_max > x_min))
        throw ConfigError("Grid1D: x_max must exceed x_min");
    if (n_cells < 2)
        throw ConfigError("Grid1D: need at least 2 cells");
    dx = (x_max - x_min) / n_cells;
}

Field::Field(const Grid1D& g, double fill, double t)
    : grid(g), values(static_cast<size_t>(g.n_nodes()), fill), time(t) {}

bool Field::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

DirichletBC DirichletBC::constant(double left_value, double right_value) {
    DirichletBC bc;
    bc.left = [left_value](double) { return left_value; };
    bc.right = [right_value](double) { return right_value; };
    return bc;
}

void DirichletBC::apply(Field& f) const {
    if (f.values.empty()) return;
    f.values.front() = left(f.time);
    f.values.back() = right(f.time);
}

Profile Profile::parse(const std::string& spec) {
    std::string head = spec;
    std::string arg;
    if (auto pos = spec.find(':'); pos != std::string::npos) {
        head = spec.substr(0, pos);
        arg = spec.substr(pos + 1);
    }
    auto numeric = [&](double fallback) {
        if (arg.empty()) return fallback;
        try {
            size_t used = 0;
            double v = std::stod(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("profile '" + spec + "': bad numeric argument");
        }
    };

    Profile p;
    if (head == "paper-sine") {
        p.kind = Kind::paper_sine;
        if (!arg.empty()) throw ConfigError("profile 'paper-sine' takes no argument");
    } else if (head == "sine") {
        p.kind = Kind::sine;
        p.amplitude = numeric(0.9);
    } else if (head == "constant") {
        p.kind = Kind::constant;
        p.value = numeric(1.0);
    } else if (head == "wave-front") {
        p.kind = Kind::wave_front;
        p.wave_k = numeric(1.0);
        if (!(p.wave_k > 0)) throw ConfigError("wave-front profile needs k > 0");
    } else {
        throw ConfigError("unknown profile '" + spec + "'");
    }
    return p;
}

std::string Profile::name() const {
    switch (kind) {
    case Kind::paper_sine: return "paper-sine";
    case Kind::sine: return "sine";
    case Kind::wave_front: return "wave-front";
    case Kind::constant: return "constant";
    }
    return "?";
}

namespace {

// True when x sits on an integer multiple of pi, where sin vanishes
// analytically but sampled floating-point values carry ~1e-16 residue.
bool on_pi_multiple(double x) {
    double m = std::round(x / std::numbers::pi);
    return std::abs(x - m * std::numbers::pi) < 1e-9;
}

} // namespace

Field make_initial_field(const Grid1D& grid, const Profile& profile) {
    Field f(grid);
    switch (profile.kind) {
    case Profile::Kind::paper_sine:
        for (int i = 0; i <= grid.n_cells; ++i)
            f.values[i] = 1.0 + 0.9 * std::sin(grid.node(i));
        if (on_pi_multiple(grid.node(0))) f.values.front() = 1.0;
        if (on_pi_multiple(grid.node(grid.n_cells))) f.values.back() = 1.0;
        break;
    case Profile::Kind::sine:
        for (int i = 0; i <= grid.n_cells; ++i)
            f.values[i] = profile.amplitude * std::sin(grid.node(i));
        if (on_pi_multiple(grid.node(0))) f.values.front() = 0.0;
        if (on_pi_multiple(grid.node(grid.n_cells))) f.values.back() = 0.0;
        break;
    case Profile::Kind::wave_front:
        for (int i = 0; i <= grid.n_cells; ++i)
            f.values[i] = wave_exact(grid.node(i), 0.0, profile.wave_k,
                                     profile.wave_direction);
        break;
    case Profile::Kind::constant:
        for (double& v : f.values) v = profile.value;
        break;
    }
    return f;
}

double max_norm_diff(const Field& a, const Field& b) {
    if (a.grid != b.grid || a.values.size() != b.values.size())
        throw DimensionError("max_norm_diff: fields live on different grids");
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

} // namespace splitlab
