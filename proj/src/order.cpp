#include "splitlab/order.hpp"

#include <cmath>

#include "splitlab/errors.hpp"

namespace splitlab {

TauLadder TauLadder::standard() {
    return TauLadder{{0.2, 0.1, 0.0625, 0.05, 0.04, 0.025, 0.02}};
}

TauLadder TauLadder::standard_tenth() {
    return TauLadder{{0.02, 0.01, 0.00625, 0.005, 0.004, 0.0025, 0.002}};
}

TauLadder TauLadder::scaled(double factor) const {
    TauLadder out = *this;
    for (double& t : out.taus) t *= factor;
    return out;
}

void TauLadder::validate(double horizon) const {
    if (taus.size() < 2) throw ConfigError("tau ladder needs at least two steps");
    for (size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0)) throw ConfigError("tau ladder entries must be positive");
        if (i > 0 && !(taus[i] < taus[i - 1]))
            throw ConfigError("tau ladder must be strictly decreasing");
        const double ratio = horizon / taus[i];
        if (std::abs(ratio - std::round(ratio)) > 1e-12 * std::max(1.0, ratio))
            throw ConfigError("tau ladder entry does not divide the horizon");
    }
}

double OrderEstimate::order() const {
    return kind == OrderKind::local ? fitted_slope - 1.0 : mean_rho;
}

std::vector<PairRatio> order_ratio_series(const std::vector<double>& errors,
                                          const std::vector<double>& taus) {
    if (errors.size() != taus.size() || errors.size() < 2)
        throw ConfigError("order_ratio_series: need matching lists of length >= 2");
    std::vector<PairRatio> out;
    for (size_t i = 0; i + 1 < errors.size(); ++i) {
        PairRatio pr;
        pr.tau_coarse = taus[i];
        pr.tau_fine = taus[i + 1];
        if (errors[i] > 0.0 && errors[i + 1] > 0.0) {
            pr.rho = std::log(errors[i] / errors[i + 1]) / std::log(taus[i] / taus[i + 1]);
        } else {
            pr.valid = false;
        }
        out.push_back(pr);
    }
    return out;
}

double fit_loglog_slope(const std::vector<double>& taus,
                        const std::vector<double>& errors) {
    if (taus.size() != errors.size() || taus.size() < 2)
        throw ConfigError("fit_loglog_slope: need matching lists of length >= 2");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < taus.size(); ++i) {
        const double lx = std::log(taus[i]);
        const double ly = std::log(errors[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(taus.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

OrderEstimate estimate_from_errors(OrderKind kind, const std::vector<double>& taus,
                                   const std::vector<double>& errors,
                                   const std::vector<double>& stability_ratios) {
    if (taus.size() != errors.size())
        throw ConfigError("estimate_from_errors: mismatched lists");
    OrderEstimate est;
    est.kind = kind;

    std::vector<double> kept_taus, kept_errors;
    for (size_t i = 0; i < taus.size(); ++i) {
        LadderPoint p;
        p.tau = taus[i];
        p.error = errors[i];
        if (!std::isfinite(errors[i])) {
            p.included = false;
            p.exclusion = "non-finite";
        } else if (!stability_ratios.empty() && stability_ratios[i] > 1.0) {
            p.included = false;
            p.exclusion = "unstable";
        } else if (!(errors[i] > kOrderNoiseFloor)) {
            p.included = false;
            p.exclusion = "noise-floor";
        }
        if (p.included) {
            kept_taus.push_back(p.tau);
            kept_errors.push_back(p.error);
        }
        est.points.push_back(std::move(p));
    }
    if (kept_taus.size() < 3)
        throw InsufficientDataError(
            "order fit: fewer than 3 ladder points survive the noise floor and "
            "stability screen");

    est.ratios = order_ratio_series(kept_errors, kept_taus);
    est.fitted_slope = fit_loglog_slope(kept_taus, kept_errors);
    double sum = 0.0;
    int n = 0;
    for (const PairRatio& pr : est.ratios)
        if (pr.valid) { sum += pr.rho; ++n; }
    est.mean_rho = n > 0 ? sum / n : 0.0;
    return est;
}

OrderEstimate local_order(const SplittingScheme& scheme,
                          const std::vector<SubProblem>& ops, const Field& f0,
                          const DirichletBC& bc, const TauLadder& ladder,
                          const ReferenceSpec& spec) {
    std::vector<double> errors, ratios;
    for (double tau : ladder.taus) {
        Field split = split_step(scheme, ops, f0, tau, bc);
        Field fine = local_reference(ops, bc, f0, tau, spec);
        errors.push_back(max_norm_diff(split, fine));
        ratios.push_back(diffusion_stability_ratio(scheme, ops, f0.grid, tau));
    }
    return estimate_from_errors(OrderKind::local, ladder.taus, errors, ratios);
}

OrderEstimate global_order(const SplittingScheme& scheme,
                           const std::vector<SubProblem>& ops, const Field& f0,
                           const DirichletBC& bc, const TauLadder& ladder,
                           double horizon, const ReferenceSpec& spec) {
    ladder.validate(horizon);
    const Field ref = reference_solve(ops, bc, f0, f0.time + horizon, spec);
    std::vector<double> errors, ratios;
    for (double tau : ladder.taus) {
        Field split = split_solve(scheme, ops, f0, f0.time + horizon, tau, bc);
        errors.push_back(max_norm_diff(split, ref));
        ratios.push_back(diffusion_stability_ratio(scheme, ops, f0.grid, tau));
    }
    return estimate_from_errors(OrderKind::global, ladder.taus, errors, ratios);
}

} // namespace splitlab
