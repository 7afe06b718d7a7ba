#include "splitlab/odebench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "splitlab/errors.hpp"

namespace splitlab {

SmallMatrix::SmallMatrix(int n_, std::vector<double> values)
    : n(n_), data(std::move(values)) {
    if (n < 1 || data.size() != static_cast<size_t>(n) * n)
        throw ConfigError("SmallMatrix: size mismatch");
}

std::vector<double> SmallMatrix::apply(const std::vector<double>& y) const {
    if (y.size() != static_cast<size_t>(n))
        throw DimensionError("SmallMatrix::apply: dimension mismatch");
    std::vector<double> out(y.size(), 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[r] += at(r, c) * y[c];
    return out;
}

SmallMatrix SmallMatrix::multiply(const SmallMatrix& other) const {
    if (other.n != n) throw DimensionError("SmallMatrix::multiply: dimension mismatch");
    SmallMatrix out(n, std::vector<double>(static_cast<size_t>(n) * n, 0.0));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
            for (int c = 0; c < n; ++c) out.at(r, c) += at(r, k) * other.at(k, c);
    return out;
}

double SmallMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
}

bool SmallMatrix::commutes_with(const SmallMatrix& other, double tol) const {
    SmallMatrix ab = multiply(other);
    SmallMatrix ba = other.multiply(*this);
    for (size_t i = 0; i < ab.data.size(); ++i)
        if (std::abs(ab.data[i] - ba.data[i]) > tol) return false;
    return true;
}

namespace {

SmallMatrix identity(int n) {
    SmallMatrix m(n, std::vector<double>(static_cast<size_t>(n) * n, 0.0));
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SmallMatrix add(const SmallMatrix& a, const SmallMatrix& b) {
    SmallMatrix out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

} // namespace

SmallMatrix matrix_exponential(const SmallMatrix& m, double scale) {
    // Scale so the series argument has max-abs norm <= 0.5, sum until terms
    // vanish at double precision, then square back.
    SmallMatrix scaled = m;
    for (double& v : scaled.data) v *= scale;
    int squarings = 0;
    double norm = scaled.max_abs() * scaled.n;
    while (norm > 0.5 && squarings < 60) {
        for (double& v : scaled.data) v *= 0.5;
        norm *= 0.5;
        ++squarings;
    }

    SmallMatrix result = identity(m.n);
    SmallMatrix term = identity(m.n);
    for (int k = 1; k <= 30; ++k) {
        term = term.multiply(scaled);
        for (double& v : term.data) v /= static_cast<double>(k);
        result = add(result, term);
        if (term.max_abs() < 1e-300) break;
    }
    for (int s = 0; s < squarings; ++s) result = result.multiply(result);
    return result;
}

double commuting_exponential_check(const SmallMatrix& a, const SmallMatrix& b,
                                   double tau) {
    if (a.n != b.n) throw DimensionError("exponential check: dimension mismatch");
    SmallMatrix lhs = matrix_exponential(a, tau).multiply(matrix_exponential(b, tau));
    SmallMatrix rhs = matrix_exponential(add(a, b), tau);
    double dev = 0.0;
    for (size_t i = 0; i < lhs.data.size(); ++i)
        dev = std::max(dev, std::abs(lhs.data[i] - rhs.data[i]));
    return dev;
}

void PolyReaction::eval(const std::vector<double>& u, std::vector<double>& out) const {
    if (u.size() != coeffs.size())
        throw DimensionError("PolyReaction: dimension mismatch");
    out.resize(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        const auto& c = coeffs[i];
        out[i] = c[0] + c[1] * u[i] + c[2] * u[i] * u[i];
    }
}

std::vector<double> PolyReaction::jacobian_diag(const std::vector<double>& u) const {
    if (u.size() != coeffs.size())
        throw DimensionError("PolyReaction: dimension mismatch");
    std::vector<double> out(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        out[i] = coeffs[i][1] + 2.0 * coeffs[i][2] * u[i];
    return out;
}

BenchProblem BenchProblem::standard() {
    BenchProblem p;
    p.a = SmallMatrix(2, {0.0, 1.0, -1.0, 0.0});
    p.reaction.coeffs = {{0.0, 1.0, -1.0}, {0.0, 1.0, -1.0}};
    p.u0 = {0.3, 0.6};
    p.ladder = TauLadder::standard_tenth();
    return p;
}

void BenchProblem::validate() const {
    if (a.n < 1 || u0.size() != static_cast<size_t>(a.n) ||
        reaction.coeffs.size() != u0.size())
        throw ConfigError("bench problem: inconsistent dimensions");
    if (ladder.taus.size() < 3)
        throw ConfigError("bench problem: ladder too short for an order fit");
}

namespace {

struct BenchFlows {
    const BenchProblem& p;

    VectorDerivative linear() const {
        return [this](double, const std::vector<double>& y, std::vector<double>& dydt) {
            dydt = p.a.apply(y);
        };
    }
    VectorDerivative nonlinear() const {
        return [this](double, const std::vector<double>& y, std::vector<double>& dydt) {
            p.reaction.eval(y, dydt);
        };
    }
    VectorDerivative combined() const {
        return [this](double, const std::vector<double>& y, std::vector<double>& dydt) {
            dydt = p.a.apply(y);
            std::vector<double> r;
            p.reaction.eval(y, r);
            for (size_t i = 0; i < dydt.size(); ++i) dydt[i] += r[i];
        };
    }
};

// op 0 = linear part, op 1 = reaction part.
std::vector<double> bench_stage_pass(const BenchFlows& flows,
                                     const std::vector<Stage>& stages,
                                     const ButcherTableau& tab, int substeps_per_tau,
                                     std::vector<double> y, double tau) {
    for (const Stage& st : stages) {
        const VectorDerivative deriv = st.op == 0 ? flows.linear() : flows.nonlinear();
        const int n = std::max(
            1, static_cast<int>(std::lround(st.fraction * substeps_per_tau)));
        const double h = st.fraction * tau / n;
        for (int i = 0; i < n; ++i) rk_step(tab, deriv, 0.0, h, y);
    }
    return y;
}

std::vector<double> bench_split_step(const BenchFlows& flows,
                                     const SplittingScheme& scheme,
                                     const ButcherTableau& tab, int substeps_per_tau,
                                     const std::vector<double>& y0, double tau) {
    SplittingScheme checked = scheme;
    checked.validate(2);
    switch (checked.kind) {
    case SchemeKind::sequential:
    case SchemeKind::strang:
        return bench_stage_pass(flows, stage_plan(checked, 2), tab, substeps_per_tau,
                                y0, tau);
    case SchemeKind::weighted_sequential:
    case SchemeKind::symmetric_weighted: {
        SplittingScheme forward = checked;
        forward.kind = SchemeKind::sequential;
        SplittingScheme backward = forward;
        std::reverse(backward.sequence.begin(), backward.sequence.end());
        const double w = checked.kind == SchemeKind::symmetric_weighted
                             ? 0.5
                             : checked.omega;
        auto a = bench_stage_pass(flows, stage_plan(forward, 2), tab,
                                  substeps_per_tau, y0, tau);
        auto b = bench_stage_pass(flows, stage_plan(backward, 2), tab,
                                  substeps_per_tau, y0, tau);
        for (size_t i = 0; i < a.size(); ++i)
            a[i] = w * a[i] + (1.0 - w) * b[i];
        return a;
    }
    }
    throw ConfigError("bench_split_step: unhandled scheme");
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> bench_fine_reference(const BenchFlows& flows,
                                         std::vector<double> y, double tau,
                                         int fine_factor = 1000) {
    const double h = tau / fine_factor;
    for (int i = 0; i < fine_factor; ++i)
        rk_step(ButcherTableau::rk4(), flows.combined(), i * h, h, y);
    return y;
}

} // namespace

OrderEstimate bench_local_order(const SplittingScheme& scheme,
                                const ButcherTableau& tableau,
                                const BenchProblem& problem, int substeps_per_tau) {
    problem.validate();
    if (substeps_per_tau < 1)
        throw ConfigError("bench_local_order: substeps must be >= 1");
    BenchFlows flows{problem};
    std::vector<double> errors;
    for (double tau : problem.ladder.taus) {
        auto split = bench_split_step(flows, scheme, tableau, substeps_per_tau,
                                      problem.u0, tau);
        auto fine = bench_fine_reference(flows, problem.u0, tau);
        errors.push_back(max_abs_diff(split, fine));
    }
    return estimate_from_errors(OrderKind::local, problem.ladder.taus, errors);
}

LeadingErrorCheck seq_euler_leading_error(const BenchProblem& problem, double tau,
                                          SeqEulerVariant variant) {
    problem.validate();
    if (!(tau > 0.0)) throw ConfigError("leading error check: tau must be positive");
    BenchFlows flows{problem};
    const auto& u0 = problem.u0;
    const size_t n = u0.size();

    std::vector<double> r0;
    problem.reaction.eval(u0, r0);
    const std::vector<double> a0 = problem.a.apply(u0);

    auto euler_pass = [&](bool linear_first) {
        std::vector<double> v(n);
        std::vector<double> stage;
        if (linear_first) {
            for (size_t i = 0; i < n; ++i) v[i] = u0[i] + tau * a0[i];
            problem.reaction.eval(v, stage);
        } else {
            for (size_t i = 0; i < n; ++i) v[i] = u0[i] + tau * r0[i];
            stage = problem.a.apply(v);
        }
        for (size_t i = 0; i < n; ++i) v[i] += tau * stage[i];
        return v;
    };

    std::vector<double> approx(n);
    switch (variant) {
    case SeqEulerVariant::linear_first: approx = euler_pass(true); break;
    case SeqEulerVariant::reaction_first: approx = euler_pass(false); break;
    case SeqEulerVariant::sw_mean: {
        auto a = euler_pass(true);
        auto b = euler_pass(false);
        for (size_t i = 0; i < n; ++i) approx[i] = 0.5 * (a[i] + b[i]);
        break;
    }
    }

    const auto exact = bench_fine_reference(flows, u0, tau);
    const double measured = max_abs_diff(exact, approx) / (tau * tau / 2.0);

    // tau^2/2 coefficient of the one-step error.
    const std::vector<double> jac = problem.reaction.jacobian_diag(u0);
    const std::vector<double> a2 = problem.a.apply(a0);
    const std::vector<double> ar = problem.a.apply(r0);
    std::vector<double> lead(n);
    for (size_t i = 0; i < n; ++i) {
        switch (variant) {
        case SeqEulerVariant::linear_first:
            lead[i] = a2[i] + ar[i] - jac[i] * a0[i] + jac[i] * r0[i];
            break;
        case SeqEulerVariant::reaction_first:
            lead[i] = a2[i] - ar[i] + jac[i] * a0[i] + jac[i] * r0[i];
            break;
        case SeqEulerVariant::sw_mean:
            lead[i] = a2[i] + jac[i] * r0[i];
            break;
        }
    }
    double predicted = 0.0;
    for (double v : lead) predicted = std::max(predicted, std::abs(v));

    LeadingErrorCheck check{measured, predicted, 0.0};
    check.rel_dev = predicted > 0.0 ? std::abs(measured - predicted) / predicted
                                    : measured;
    return check;
}

} // namespace splitlab
