#pragma once

#include <iosfwd>
#include <vector>

#include "splitlab/grid.hpp"
#include "splitlab/integrators.hpp"
#include "splitlab/operators.hpp"

namespace splitlab {

/// Settings for unsplit reference solutions.
struct ReferenceSpec {
    ButcherTableau tableau = ButcherTableau::rk4();
    double tau_ref = 0.01;  // global runs
    int fine_factor = 1000; // local references use step tau / fine_factor

    void validate() const; // throws ConfigError
};

// Solves the coupled system (all sub-operator derivatives evaluated together)
// with fixed step spec.tau_ref, boundary re-imposed each step. tau_ref must
// divide t_end - f0.time.
Field reference_solve(const std::vector<SubProblem>& ops, const DirichletBC& bc,
                      const Field& f0, double t_end, const ReferenceSpec& spec = {});

// Fine reference over one macro step [f0.time, f0.time + tau], with step
// tau / spec.fine_factor.
Field local_reference(const std::vector<SubProblem>& ops, const DirichletBC& bc,
                      const Field& f0, double tau, const ReferenceSpec& spec = {});

struct WaveReport {
    int n_cells;
    double dx;
    double max_error; // against the exact front sampled at t_end
};

// Solves the semidiscrete logistic reaction-diffusion system with
// time-dependent Dirichlet data sampled from the exact traveling front, and
// reports the max-norm error at t_end.
WaveReport wave_validate(const Grid1D& grid, double k, double t_end,
                         const ReferenceSpec& spec = {});

struct WaveStudy {
    std::vector<WaveReport> reports;
    double fitted_spatial_order; // log-log slope of error against dx
};

WaveStudy wave_refinement_study(double x_min, double x_max,
                                const std::vector<int>& cell_counts, double k,
                                double t_end, const ReferenceSpec& spec = {});

// Rows of "x,value" for plotting solution snapshots.
void write_field_csv(std::ostream& os, const Field& f);

} // namespace splitlab
