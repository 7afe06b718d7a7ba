#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "splitlab/grid.hpp"
#include "splitlab/operators.hpp"

namespace splitlab {

enum class SchemeKind {
    sequential,          // one full sub-step per operator, in sequence order
    strang,              // palindromic composition, halved outer/middle stages
    weighted_sequential, // omega * (sequence order) + (1-omega) * (reversed)
    symmetric_weighted,  // arithmetic mean over all sequential orderings
};

std::string to_string(SchemeKind kind);

/// A composition recipe over sub-flows. `sequence` lists sub-problem indices
/// in application order, first-applied first; for strang it reads
/// [outer, (middle,) inner].
struct SplittingScheme {
    SchemeKind kind = SchemeKind::sequential;
    std::vector<int> sequence; // defaults to 0..n-1 when empty
    double omega = 0.5;        // weighted_sequential only

    // Accepts "seq", "strang", "sw", "weighted(0.25)".
    static SplittingScheme parse(std::string_view spec);
    std::string name() const;
    // Fills a default sequence and checks consistency with the operator
    // count; throws ConfigError.
    void validate(int n_subproblems);
};

struct Stage {
    int op;          // sub-problem index
    double fraction; // share of the macro step tau
};

// The stage list realized by one macro step of a sequential or strang
// composition. Weighted and symmetric-weighted schemes average over
// sequential passes and are expanded by the caller.
std::vector<Stage> stage_plan(const SplittingScheme& scheme, int n_subproblems);

// Advances f by exactly tau through the scheme; the Dirichlet boundary is
// re-imposed after every sub-flow.
Field split_step(const SplittingScheme& scheme, const std::vector<SubProblem>& ops,
                 const Field& f, double tau, const DirichletBC& bc);

// Repeated split_step until t_end past f0.time. t_end must be an integral
// number of macro steps (1e-12 relative); the time coordinate after step k is
// f0.time + k*tau, never accumulated additively.
Field split_solve(const SplittingScheme& scheme, const std::vector<SubProblem>& ops,
                  Field f0, double t_end, double tau, const DirichletBC& bc);

// Stiffness of the worst numerically-solved diffusion stage of one macro
// step, as lambda_max * h_stage / (tableau real-axis stability limit) with
// lambda_max = 4 D / dx^2. Values above 1 flag an explicit-instability-
// corrupted combination; exact flows and reaction stages contribute 0.
double diffusion_stability_ratio(const SplittingScheme& scheme,
                                 const std::vector<SubProblem>& ops,
                                 const Grid1D& grid, double tau);

} // namespace splitlab
