#include "splitlab/operators.hpp"

#include <cmath>

#include "splitlab/errors.hpp"

namespace splitlab {

bool is_reaction(OperatorKind kind) { return kind != OperatorKind::diffusion; }

std::string to_string(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::diffusion: return "diffusion";
    case OperatorKind::logistic_reaction: return "logistic";
    case OperatorKind::linear_reaction: return "linear";
    case OperatorKind::quadratic_reaction: return "quadratic";
    }
    return "?";
}

OperatorKind operator_kind_from_string(std::string_view name) {
    if (name == "diffusion") return OperatorKind::diffusion;
    if (name == "logistic") return OperatorKind::logistic_reaction;
    if (name == "linear") return OperatorKind::linear_reaction;
    if (name == "quadratic") return OperatorKind::quadratic_reaction;
    throw ConfigError("unknown operator '" + std::string(name) +
                      "' (expected diffusion, logistic, linear, quadratic)");
}

SubProblem SubProblem::diffusion(double d, const ButcherTableau& tab, int substeps) {
    SubProblem sp;
    sp.kind = OperatorKind::diffusion;
    sp.flow_mode = FlowMode::numerical;
    sp.tableau = tab;
    sp.substeps_per_tau = substeps;
    sp.diffusion_coefficient = d;
    sp.validate();
    return sp;
}

SubProblem SubProblem::reaction(OperatorKind kind, FlowMode mode,
                                const ButcherTableau& tab, int substeps) {
    if (!is_reaction(kind))
        throw ConfigError("SubProblem::reaction needs a reaction kind");
    SubProblem sp;
    sp.kind = kind;
    sp.flow_mode = mode;
    sp.tableau = tab;
    sp.substeps_per_tau = substeps;
    sp.validate();
    return sp;
}

void SubProblem::validate() const {
    if (kind == OperatorKind::diffusion) {
        if (flow_mode == FlowMode::exact)
            throw ConfigError("diffusion has no usable exact flow; solve it numerically");
        if (!(diffusion_coefficient > 0.0))
            throw ConfigError("diffusion coefficient must be positive");
    }
    if (flow_mode == FlowMode::numerical) {
        tableau.validate();
        if (substeps_per_tau < 1)
            throw ConfigError("substeps per macro step must be >= 1");
    }
}

namespace {

void require_stencil_length(const Field& f) {
    if (f.size() < 3)
        throw DimensionError("field needs at least 3 nodes for interior stencils");
}

} // namespace

Field apply_diffusion(const Field& f, double diffusion_coefficient) {
    require_stencil_length(f);
    Field out(f.grid, 0.0, f.time);
    const double scale = diffusion_coefficient / (f.grid.dx * f.grid.dx);
    for (int i = 1; i < f.size() - 1; ++i)
        out.values[i] =
            scale * (f.values[i + 1] - 2.0 * f.values[i] + f.values[i - 1]);
    return out;
}

Field apply_reaction(OperatorKind kind, const Field& f) {
    if (!is_reaction(kind))
        throw ConfigError("apply_reaction: '" + to_string(kind) + "' is not a reaction");
    require_stencil_length(f);
    Field out(f.grid, 0.0, f.time);
    for (int i = 1; i < f.size() - 1; ++i) {
        const double u = f.values[i];
        switch (kind) {
        case OperatorKind::logistic_reaction: out.values[i] = u * (1.0 - u); break;
        case OperatorKind::linear_reaction: out.values[i] = u; break;
        case OperatorKind::quadratic_reaction: out.values[i] = -u * u; break;
        default: break;
        }
    }
    return out;
}

Field apply_derivative(const SubProblem& sp, const Field& f) {
    if (sp.kind == OperatorKind::diffusion)
        return apply_diffusion(f, sp.diffusion_coefficient);
    return apply_reaction(sp.kind, f);
}

Field exact_flow(OperatorKind kind, const Field& f, double t) {
    if (!is_reaction(kind))
        throw ConfigError("exact_flow: diffusion has no usable exact flow");
    if (t < 0.0) throw ConfigError("exact_flow: time increment must be >= 0");

    Field out = f;
    const double et = std::exp(t);
    for (int i = 0; i < f.size(); ++i) {
        const double eta = f.values[i];
        switch (kind) {
        case OperatorKind::logistic_reaction: {
            const double denom = 1.0 - eta + eta * et;
            if (!(denom > 0.0))
                throw BlowUpError("logistic flow blow-up at node " +
                                  std::to_string(i) + ", t = " + std::to_string(t));
            out.values[i] = eta * et / denom;
            break;
        }
        case OperatorKind::linear_reaction:
            out.values[i] = eta * et;
            break;
        case OperatorKind::quadratic_reaction: {
            const double denom = 1.0 + eta * t;
            if (!(denom > 0.0))
                throw BlowUpError("quadratic flow blow-up at node " +
                                  std::to_string(i) + ", t = " + std::to_string(t));
            out.values[i] = eta / denom;
            break;
        }
        default: break;
        }
        if (!std::isfinite(out.values[i]))
            throw OverflowError("exact_flow produced a non-finite value at node " +
                                std::to_string(i));
    }
    out.time = f.time + t;
    return out;
}

double reaction_second_derivative(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::logistic_reaction: return -2.0;  // (u - u^2)'' = -2
    case OperatorKind::linear_reaction: return 0.0;
    case OperatorKind::quadratic_reaction: return -2.0; // (-u^2)'' = -2
    default:
        throw ConfigError("reaction_second_derivative: not a reaction kind");
    }
}

Field commutation_residual(OperatorKind kind, const Field& f) {
    const double rpp = reaction_second_derivative(kind);
    require_stencil_length(f);
    Field out(f.grid, 0.0, f.time);
    const double inv2dx = 1.0 / (2.0 * f.grid.dx);
    for (int i = 1; i < f.size() - 1; ++i) {
        const double grad = (f.values[i + 1] - f.values[i - 1]) * inv2dx;
        out.values[i] = rpp * grad * grad;
    }
    return out;
}

FieldDerivative combined_derivative(std::vector<SubProblem> ops, DirichletBC bc) {
    return [ops = std::move(ops), bc = std::move(bc)](const Field& f) {
        Field out(f.grid, 0.0, f.time);
        for (const SubProblem& sp : ops) {
            Field part = apply_derivative(sp, f);
            for (int i = 0; i < f.size(); ++i) out.values[i] += part.values[i];
        }
        if (bc.time_dependent()) {
            out.values.front() = bc.rate_left(f.time);
            out.values.back() = bc.rate_right(f.time);
        }
        return out;
    };
}

} // namespace splitlab
