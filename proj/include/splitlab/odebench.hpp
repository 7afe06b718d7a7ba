#pragma once

#include <array>
#include <vector>

#include "splitlab/integrators.hpp"
#include "splitlab/order.hpp"
#include "splitlab/splitting.hpp"

namespace splitlab {

/// Small dense matrix, row major.
struct SmallMatrix {
    int n = 0;
    std::vector<double> data;

    SmallMatrix() = default;
    SmallMatrix(int n_, std::vector<double> values);

    double& at(int r, int c) { return data[static_cast<size_t>(r) * n + c]; }
    double at(int r, int c) const { return data[static_cast<size_t>(r) * n + c]; }
    std::vector<double> apply(const std::vector<double>& y) const;
    SmallMatrix multiply(const SmallMatrix& other) const;
    double max_abs() const;
    bool commutes_with(const SmallMatrix& other, double tol = 1e-12) const;
};

// exp(scale * m) by scaling-and-squaring of the truncated series.
SmallMatrix matrix_exponential(const SmallMatrix& m, double scale = 1.0);

// Max-norm deviation between exp(tau A) exp(tau B) and exp(tau (A+B));
// <= 1e-12 whenever A and B commute.
double commuting_exponential_check(const SmallMatrix& a, const SmallMatrix& b,
                                   double tau);

/// Componentwise polynomial reaction r_i(u) = c0 + c1 u_i + c2 u_i^2.
struct PolyReaction {
    std::vector<std::array<double, 3>> coeffs;

    void eval(const std::vector<double>& u, std::vector<double>& out) const;
    // d r_i / d u_i (the Jacobian is diagonal).
    std::vector<double> jacobian_diag(const std::vector<double>& u) const;
};

/// Finite-dimensional bounded-operator test problem u' = A u + R(u).
struct BenchProblem {
    SmallMatrix a;
    PolyReaction reaction;
    std::vector<double> u0;
    TauLadder ladder;

    // A = [[0,1],[-1,0]] (a rotation, so A and R genuinely fail to commute),
    // R(u) = u(1-u) componentwise, U0 = (0.3, 0.6), ladder 0.02 .. 0.002.
    static BenchProblem standard();
    void validate() const;
};

// Local order of the combined method on the bench problem; sub-flows are
// solved numerically by the tableau with h = tau / substeps_per_tau,
// reference by rk4 with step tau / 1000.
OrderEstimate bench_local_order(const SplittingScheme& scheme,
                                const ButcherTableau& tableau,
                                const BenchProblem& problem,
                                int substeps_per_tau = 10);

enum class SeqEulerVariant {
    linear_first,   // V = U0 + tau A U0;  U~ = V + tau R(V)
    reaction_first, // V = U0 + tau R(U0); U~ = V + tau A V
    sw_mean,        // average of the two, omega = 1/2
};

struct LeadingErrorCheck {
    double measured;  // |U(tau) - U~(tau)| / (tau^2/2), max norm
    double predicted; // max norm of the tau^2/2 coefficient
    double rel_dev;
};

// One-step leading-error constant of sequential (or symmetrically weighted)
// splitting with a single forward-Euler step per sub-flow:
//   linear_first:   A^2 U0 + A R(U0) - R'(U0) A U0 + R'(U0) R(U0)
//   reaction_first: A^2 U0 - A R(U0) + R'(U0) A U0 + R'(U0) R(U0)
//   sw_mean:        A^2 U0 + R'(U0) R(U0)
LeadingErrorCheck seq_euler_leading_error(const BenchProblem& problem, double tau,
                                          SeqEulerVariant variant);

} // namespace splitlab
