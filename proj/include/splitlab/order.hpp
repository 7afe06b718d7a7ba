#pragma once

#include <string>
#include <vector>

#include "splitlab/grid.hpp"
#include "splitlab/reference.hpp"
#include "splitlab/splitting.hpp"

namespace splitlab {

/// Strictly decreasing list of macro steps.
struct TauLadder {
    std::vector<double> taus;

    // 0.2, 0.1, 0.0625, 0.05, 0.04, 0.025, 0.02
    static TauLadder standard();
    // The same ladder at a tenth of the size, as exact decimals; default for
    // local-order fits, which need the asymptotic regime.
    static TauLadder standard_tenth();
    TauLadder scaled(double factor) const;
    // Strictly decreasing and each tau divides the horizon (1e-12 relative).
    void validate(double horizon) const; // throws ConfigError
};

// Errors below this are reference-limited and excluded from fits.
inline constexpr double kOrderNoiseFloor = 1e-12;

struct LadderPoint {
    double tau = 0.0;
    double error = 0.0;
    bool included = true;
    std::string exclusion; // "", "noise-floor", "unstable"
};

struct PairRatio {
    double tau_coarse = 0.0;
    double tau_fine = 0.0;
    double rho = 0.0;
    bool valid = true;
};

enum class OrderKind { local, global };

struct OrderEstimate {
    OrderKind kind = OrderKind::global;
    std::vector<LadderPoint> points;
    std::vector<PairRatio> ratios; // consecutive included points
    double fitted_slope = 0.0;     // least-squares log E vs log tau
    double mean_rho = 0.0;         // mean of valid pairwise ratios
    // local: fitted_slope - 1; global: mean_rho.
    double order() const;
};

// rho_i = log(E_i/E_{i+1}) / log(tau_i/tau_{i+1}) for consecutive pairs;
// pairs with a non-positive error are flagged invalid.
std::vector<PairRatio> order_ratio_series(const std::vector<double>& errors,
                                          const std::vector<double>& taus);

double fit_loglog_slope(const std::vector<double>& taus,
                        const std::vector<double>& errors);

// Assembles an estimate from measured errors. `stability_ratios` (may be
// empty) marks points > 1 as excluded "unstable"; errors under the noise
// floor are excluded as "noise-floor". Fewer than 3 surviving points raise
// InsufficientDataError.
OrderEstimate estimate_from_errors(OrderKind kind, const std::vector<double>& taus,
                                   const std::vector<double>& errors,
                                   const std::vector<double>& stability_ratios = {});

// E(tau) = one macro step against the fine local reference over [0, tau];
// order from the least-squares slope, s = slope - 1.
OrderEstimate local_order(const SplittingScheme& scheme,
                          const std::vector<SubProblem>& ops, const Field& f0,
                          const DirichletBC& bc, const TauLadder& ladder,
                          const ReferenceSpec& spec = {});

// E(tau) = split_solve to the horizon against the global reference; headline
// order is the mean pairwise rho.
OrderEstimate global_order(const SplittingScheme& scheme,
                           const std::vector<SubProblem>& ops, const Field& f0,
                           const DirichletBC& bc, const TauLadder& ladder,
                           double horizon, const ReferenceSpec& spec = {});

} // namespace splitlab
