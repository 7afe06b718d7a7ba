#include "splitlab/reference.hpp"

#include <cmath>
#include <ostream>

#include "splitlab/errors.hpp"
#include "splitlab/format.hpp"
#include "splitlab/waves.hpp"

namespace splitlab {

void ReferenceSpec::validate() const {
    tableau.validate();
    if (!(tau_ref > 0.0)) throw ConfigError("reference step must be positive");
    if (fine_factor < 1) throw ConfigError("reference fine factor must be >= 1");
}

double wave_exact(double x, double t, double k, double direction) {
    const double z = -(5.0 / 6.0) * t + direction * x / std::sqrt(6.0);
    const double e = 1.0 + k * std::exp(z);
    return 1.0 / (e * e);
}

double wave_exact_dt(double x, double t, double k, double direction) {
    const double z = -(5.0 / 6.0) * t + direction * x / std::sqrt(6.0);
    const double e = k * std::exp(z);
    const double denom = 1.0 + e;
    return (5.0 / 3.0) * e / (denom * denom * denom);
}

Field reference_solve(const std::vector<SubProblem>& ops, const DirichletBC& bc,
                      const Field& f0, double t_end, const ReferenceSpec& spec) {
    spec.validate();
    const double span = t_end - f0.time;
    if (!(span > 0.0)) throw ConfigError("reference_solve: t_end must lie past f0.time");
    const double ratio = span / spec.tau_ref;
    const long long n = std::llround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("reference_solve: tau_ref does not divide the horizon");
    return integrate(spec.tableau, combined_derivative(ops, bc), f0, span,
                     static_cast<int>(n), &bc);
}

Field local_reference(const std::vector<SubProblem>& ops, const DirichletBC& bc,
                      const Field& f0, double tau, const ReferenceSpec& spec) {
    spec.validate();
    if (!(tau > 0.0)) throw ConfigError("local_reference: tau must be positive");
    return integrate(spec.tableau, combined_derivative(ops, bc), f0, tau,
                     spec.fine_factor, &bc);
}

WaveReport wave_validate(const Grid1D& grid, double k, double t_end,
                         const ReferenceSpec& spec) {
    if (!(k > 0.0)) throw ConfigError("wave_validate: k must be positive");
    const double direction = 1.0;

    Profile profile;
    profile.kind = Profile::Kind::wave_front;
    profile.wave_k = k;
    profile.wave_direction = direction;
    Field f0 = make_initial_field(grid, profile);

    DirichletBC bc;
    const double xl = grid.x_min;
    const double xr = grid.x_max;
    bc.left = [=](double t) { return wave_exact(xl, t, k, direction); };
    bc.right = [=](double t) { return wave_exact(xr, t, k, direction); };
    bc.left_rate = [=](double t) { return wave_exact_dt(xl, t, k, direction); };
    bc.right_rate = [=](double t) { return wave_exact_dt(xr, t, k, direction); };

    WaveReport report{grid.n_cells, grid.dx, 0.0};
    if (t_end == 0.0) return report; // initial sampling is exact

    const std::vector<SubProblem> ops{
        SubProblem::diffusion(1.0, spec.tableau, 1),
        SubProblem::reaction(OperatorKind::logistic_reaction, FlowMode::numerical,
                             spec.tableau, 1),
    };
    Field solved = reference_solve(ops, bc, f0, t_end, spec);

    Field exact(grid, 0.0, t_end);
    for (int i = 0; i <= grid.n_cells; ++i)
        exact.values[i] = wave_exact(grid.node(i), t_end, k, direction);
    report.max_error = max_norm_diff(solved, exact);
    return report;
}

WaveStudy wave_refinement_study(double x_min, double x_max,
                                const std::vector<int>& cell_counts, double k,
                                double t_end, const ReferenceSpec& spec) {
    if (cell_counts.size() < 2)
        throw ConfigError("wave refinement study needs at least two grids");
    WaveStudy study;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int n : cell_counts) {
        Grid1D grid(x_min, x_max, n);
        study.reports.push_back(wave_validate(grid, k, t_end, spec));
        const double lx = std::log(grid.dx);
        const double ly = std::log(study.reports.back().max_error);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double m = static_cast<double>(cell_counts.size());
    study.fitted_spatial_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return study;
}

void write_field_csv(std::ostream& os, const Field& f) {
    os << "x,value\n";
    for (int i = 0; i < f.size(); ++i)
        os << fmt(f.grid.node(i)) << ',' << fmt(f.values[i]) << '\n';
}

} // namespace splitlab
