#include "splitlab/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "splitlab/errors.hpp"

namespace splitlab {

std::string to_string(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::sequential: return "seq";
    case SchemeKind::strang: return "strang";
    case SchemeKind::weighted_sequential: return "weighted";
    case SchemeKind::symmetric_weighted: return "sw";
    }
    return "?";
}

SplittingScheme SplittingScheme::parse(std::string_view spec) {
    SplittingScheme s;
    if (spec == "seq") {
        s.kind = SchemeKind::sequential;
    } else if (spec == "strang" || spec == "ms") {
        s.kind = SchemeKind::strang;
    } else if (spec == "sw") {
        s.kind = SchemeKind::symmetric_weighted;
    } else if (spec.starts_with("weighted(") && spec.ends_with(")")) {
        s.kind = SchemeKind::weighted_sequential;
        const std::string arg(spec.substr(9, spec.size() - 10));
        try {
            size_t used = 0;
            s.omega = std::stod(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
            throw ConfigError("weighted scheme: bad omega '" + arg + "'");
        }
        if (s.omega < 0.0 || s.omega > 1.0)
            throw ConfigError("weighted scheme: omega must lie in [0,1]");
    } else {
        throw ConfigError("unknown scheme '" + std::string(spec) +
                          "' (expected seq, strang, sw, weighted(omega))");
    }
    return s;
}

std::string SplittingScheme::name() const {
    if (kind == SchemeKind::weighted_sequential)
        return "weighted(" + std::to_string(omega) + ")";
    return to_string(kind);
}

void SplittingScheme::validate(int n_subproblems) {
    if (n_subproblems < 2 || n_subproblems > 3)
        throw ConfigError("splitting needs 2 or 3 sub-problems, got " +
                          std::to_string(n_subproblems));
    if (kind == SchemeKind::weighted_sequential && n_subproblems != 2)
        throw ConfigError("weighted splitting is defined for 2 sub-problems");
    std::vector<int> seq = sequence;
    if (seq.empty()) {
        seq.resize(n_subproblems);
        std::iota(seq.begin(), seq.end(), 0);
    }
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(n_subproblems);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected)
        throw ConfigError("scheme sequence must be a permutation of the sub-problems");
    sequence = std::move(seq);
}

std::vector<Stage> stage_plan(const SplittingScheme& scheme, int n_subproblems) {
    std::vector<int> seq = scheme.sequence;
    if (seq.empty()) {
        seq.resize(n_subproblems);
        std::iota(seq.begin(), seq.end(), 0);
    }
    std::vector<Stage> stages;
    switch (scheme.kind) {
    case SchemeKind::sequential:
    case SchemeKind::weighted_sequential:
    case SchemeKind::symmetric_weighted:
        for (int op : seq) stages.push_back({op, 1.0});
        break;
    case SchemeKind::strang:
        // [outer, inner] or [outer, middle, inner]; halved outer/middle
        // stages around the full inner step.
        for (size_t i = 0; i + 1 < seq.size(); ++i) stages.push_back({seq[i], 0.5});
        stages.push_back({seq.back(), 1.0});
        for (size_t i = seq.size() - 1; i-- > 0;) stages.push_back({seq[i], 0.5});
        break;
    }
    return stages;
}

namespace {

int stage_substeps(const SubProblem& sp, double fraction) {
    return std::max(1, static_cast<int>(std::lround(fraction * sp.substeps_per_tau)));
}

Field run_stages(const std::vector<Stage>& stages, const std::vector<SubProblem>& ops,
                 Field f, double tau, const DirichletBC& bc) {
    for (const Stage& st : stages) {
        const SubProblem& sp = ops[static_cast<size_t>(st.op)];
        if (sp.flow_mode == FlowMode::exact) {
            f = exact_flow(sp.kind, f, st.fraction * tau);
            bc.apply(f);
        } else {
            const auto deriv = [&sp](const Field& state) {
                return apply_derivative(sp, state);
            };
            f = integrate(sp.tableau, deriv, f, st.fraction * tau,
                          stage_substeps(sp, st.fraction), &bc);
        }
    }
    return f;
}

std::vector<std::vector<int>> index_permutations(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return perms;
}

} // namespace

Field split_step(const SplittingScheme& scheme, const std::vector<SubProblem>& ops,
                 const Field& f, double tau, const DirichletBC& bc) {
    if (!(tau > 0.0)) throw ConfigError("split_step: tau must be positive");
    if (bc.time_dependent())
        throw ConfigError(
            "split_step: time-dependent boundary data is only supported by the "
            "unsplit reference solver");
    SplittingScheme checked = scheme;
    checked.validate(static_cast<int>(ops.size()));
    for (const SubProblem& sp : ops) sp.validate();

    const double t0 = f.time;
    Field out;
    switch (checked.kind) {
    case SchemeKind::sequential:
    case SchemeKind::strang:
        out = run_stages(stage_plan(checked, static_cast<int>(ops.size())), ops, f,
                         tau, bc);
        break;
    case SchemeKind::weighted_sequential: {
        SplittingScheme forward = checked;
        forward.kind = SchemeKind::sequential;
        SplittingScheme backward = forward;
        std::reverse(backward.sequence.begin(), backward.sequence.end());
        if (checked.omega == 1.0) {
            out = run_stages(stage_plan(forward, 2), ops, f, tau, bc);
        } else if (checked.omega == 0.0) {
            out = run_stages(stage_plan(backward, 2), ops, f, tau, bc);
        } else {
            Field a = run_stages(stage_plan(forward, 2), ops, f, tau, bc);
            Field b = run_stages(stage_plan(backward, 2), ops, f, tau, bc);
            out = a;
            for (int i = 0; i < out.size(); ++i)
                out.values[i] = checked.omega * a.values[i] +
                                (1.0 - checked.omega) * b.values[i];
        }
        break;
    }
    case SchemeKind::symmetric_weighted: {
        const auto perms = index_permutations(static_cast<int>(ops.size()));
        Field sum;
        for (const auto& perm : perms) {
            SplittingScheme pass;
            pass.kind = SchemeKind::sequential;
            pass.sequence = perm;
            Field r = run_stages(stage_plan(pass, static_cast<int>(ops.size())), ops,
                                 f, tau, bc);
            if (sum.values.empty()) {
                sum = r;
            } else {
                for (int i = 0; i < sum.size(); ++i) sum.values[i] += r.values[i];
            }
        }
        const double inv = 1.0 / static_cast<double>(perms.size());
        for (double& v : sum.values) v *= inv;
        out = sum;
        break;
    }
    }
    out.time = t0 + tau;
    bc.apply(out);
    if (!out.all_finite())
        throw OverflowError("split_step produced a non-finite value");
    return out;
}

Field split_solve(const SplittingScheme& scheme, const std::vector<SubProblem>& ops,
                  Field f0, double t_end, double tau, const DirichletBC& bc) {
    if (!(tau > 0.0)) throw ConfigError("split_solve: tau must be positive");
    const double span = t_end - f0.time;
    if (!(span > 0.0)) throw ConfigError("split_solve: t_end must lie past f0.time");
    const double ratio = span / tau;
    const long long k = std::llround(ratio);
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-12 * std::max(1.0, ratio))
        throw ConfigError("split_solve: t_end is not an integral number of macro steps");
    const double t0 = f0.time;
    for (long long i = 0; i < k; ++i) {
        f0 = split_step(scheme, ops, f0, tau, bc);
        f0.time = t0 + static_cast<double>(i + 1) * tau;
    }
    return f0;
}

double diffusion_stability_ratio(const SplittingScheme& scheme,
                                 const std::vector<SubProblem>& ops,
                                 const Grid1D& grid, double tau) {
    SplittingScheme checked = scheme;
    checked.validate(static_cast<int>(ops.size()));

    std::vector<std::vector<Stage>> plans;
    if (checked.kind == SchemeKind::symmetric_weighted) {
        for (const auto& perm : index_permutations(static_cast<int>(ops.size()))) {
            SplittingScheme pass;
            pass.kind = SchemeKind::sequential;
            pass.sequence = perm;
            plans.push_back(stage_plan(pass, static_cast<int>(ops.size())));
        }
    } else if (checked.kind == SchemeKind::weighted_sequential) {
        SplittingScheme forward = checked;
        forward.kind = SchemeKind::sequential;
        SplittingScheme backward = forward;
        std::reverse(backward.sequence.begin(), backward.sequence.end());
        plans.push_back(stage_plan(forward, 2));
        plans.push_back(stage_plan(backward, 2));
    } else {
        plans.push_back(stage_plan(checked, static_cast<int>(ops.size())));
    }

    double worst = 0.0;
    for (const auto& plan : plans) {
        for (const Stage& st : plan) {
            const SubProblem& sp = ops[static_cast<size_t>(st.op)];
            if (sp.kind != OperatorKind::diffusion || sp.flow_mode == FlowMode::exact)
                continue;
            const double h = st.fraction * tau / stage_substeps(sp, st.fraction);
            const double lambda =
                4.0 * sp.diffusion_coefficient / (grid.dx * grid.dx);
            worst = std::max(worst, lambda * h / sp.tableau.real_stability_limit());
        }
    }
    return worst;
}

} // namespace splitlab
