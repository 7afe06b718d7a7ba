#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "splitlab/grid.hpp"
#include "splitlab/integrators.hpp"

namespace splitlab {

enum class OperatorKind {
    diffusion,
    logistic_reaction,  // u(1-u)
    linear_reaction,    // u
    quadratic_reaction, // -u^2
};

bool is_reaction(OperatorKind kind);
std::string to_string(OperatorKind kind);
// Accepts "diffusion", "logistic", "linear", "quadratic".
OperatorKind operator_kind_from_string(std::string_view name);

enum class FlowMode { exact, numerical };

/// One split sub-operator together with the solver for its flow.
///
/// Numerical flows advance with the bundled tableau using
/// h = tau / substeps_per_tau; a stage covering fraction f of a macro step
/// gets max(1, round(f * substeps_per_tau)) substeps. Exact flows exist for
/// the three reaction kinds only.
struct SubProblem {
    OperatorKind kind = OperatorKind::diffusion;
    FlowMode flow_mode = FlowMode::numerical;
    ButcherTableau tableau = ButcherTableau::rk4();
    int substeps_per_tau = 1;
    double diffusion_coefficient = 1.0;

    static SubProblem diffusion(double d, const ButcherTableau& tab, int substeps);
    static SubProblem reaction(OperatorKind kind, FlowMode mode,
                               const ButcherTableau& tab = ButcherTableau::rk4(),
                               int substeps = 1);
    void validate() const; // throws ConfigError
};

// Three-point Laplacian times D on interior nodes; boundary rows 0.
// Needs at least 3 nodes.
Field apply_diffusion(const Field& f, double diffusion_coefficient = 1.0);

// Pointwise reaction term at interior nodes; boundary rows 0.
Field apply_reaction(OperatorKind kind, const Field& f);

// Dispatches to apply_diffusion / apply_reaction.
Field apply_derivative(const SubProblem& sp, const Field& f);

// Closed-form flow of the scalar reaction ODE from each node value,
// advanced by t:
//   logistic:  eta e^t / (1 - eta + eta e^t)
//   linear:    eta e^t
//   quadratic: eta / (1 + eta t)
// Throws BlowUpError naming node and time when a denominator is <= 0.
Field exact_flow(OperatorKind kind, const Field& f, double t);

// Zero-splitting-error residual R''(phi) * (d_x phi)^2 per interior node,
// with the centered first difference for d_x phi; boundary rows 0.
// Identically zero exactly for the linear reaction (R'' = 0).
Field commutation_residual(OperatorKind kind, const Field& f);

double reaction_second_derivative(OperatorKind kind); // -2, 0, -2

// Sum of the sub-operator derivatives evaluated together. Boundary rows carry
// the BC rates when the BC is time dependent, 0 otherwise.
FieldDerivative combined_derivative(std::vector<SubProblem> ops, DirichletBC bc);

} // namespace splitlab
