#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "splitlab/errors.hpp"
#include "splitlab/experiments.hpp"
#include "splitlab/grid.hpp"
#include "splitlab/operators.hpp"
#include "splitlab/order.hpp"
#include "splitlab/reference.hpp"
#include "splitlab/splitting.hpp"

using namespace splitlab;

namespace {

const double kPi = std::numbers::pi;

ProblemSetup fisher(int substeps = 1, const std::string& flow = "numerical",
                    const char* integrator = "rk4") {
    return make_problem("fisher", 30, ButcherTableau::by_name(integrator), substeps,
                        flow);
}

SplittingScheme seq() {
    SplittingScheme s;
    s.kind = SchemeKind::sequential;
    return s;
}

SplittingScheme strang(std::vector<int> sequence = {}) {
    SplittingScheme s;
    s.kind = SchemeKind::strang;
    s.sequence = std::move(sequence);
    return s;
}

} // namespace

TEST_CASE("scheme parsing") {
    CHECK(SplittingScheme::parse("seq").kind == SchemeKind::sequential);
    CHECK(SplittingScheme::parse("strang").kind == SchemeKind::strang);
    CHECK(SplittingScheme::parse("sw").kind == SchemeKind::symmetric_weighted);
    const SplittingScheme w = SplittingScheme::parse("weighted(0.25)");
    CHECK(w.kind == SchemeKind::weighted_sequential);
    CHECK(w.omega == 0.25);
    CHECK_THROWS_AS(SplittingScheme::parse("weighted(1.5)"), ConfigError);
    CHECK_THROWS_AS(SplittingScheme::parse("lie-trotter"), ConfigError);
}

TEST_CASE("scheme validation") {
    SplittingScheme s = seq();
    CHECK_THROWS_AS(s.validate(1), ConfigError);
    CHECK_THROWS_AS(s.validate(4), ConfigError);

    s.sequence = {0, 0};
    CHECK_THROWS_AS(s.validate(2), ConfigError);

    SplittingScheme w = SplittingScheme::parse("weighted(0.5)");
    CHECK_THROWS_AS(w.validate(3), ConfigError);
    CHECK_NOTHROW(w.validate(2));
}

TEST_CASE("stage plans") {
    SplittingScheme s2 = strang({0, 1});
    auto plan = stage_plan(s2, 2);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0].op == 0);
    CHECK(plan[0].fraction == 0.5);
    CHECK(plan[1].op == 1);
    CHECK(plan[1].fraction == 1.0);
    CHECK(plan[2].op == 0);
    CHECK(plan[2].fraction == 0.5);

    // outer, middle, inner-full, middle, outer
    SplittingScheme s3 = strang({2, 1, 0});
    plan = stage_plan(s3, 3);
    REQUIRE(plan.size() == 5);
    const int expect_op[5] = {2, 1, 0, 1, 2};
    const double expect_frac[5] = {0.5, 0.5, 1.0, 0.5, 0.5};
    for (int i = 0; i < 5; ++i) {
        CHECK(plan[i].op == expect_op[i]);
        CHECK(plan[i].fraction == expect_frac[i]);
    }
}

TEST_CASE("sequential with a neutral flow equals the other flow alone") {
    // A 0/1 step field consists of logistic fixed points, so the exact
    // logistic flow is the identity on it and SEQ [logistic, diffusion]
    // must coincide with the diffusion flow alone.
    const Grid1D g(0.0, 4.0 * kPi, 30);
    Field f0(g);
    for (int i = 0; i <= g.n_cells; ++i) f0.values[i] = i <= 15 ? 1.0 : 0.0;
    const DirichletBC bc = DirichletBC::constant(1.0, 0.0);

    std::vector<SubProblem> ops{
        SubProblem::reaction(OperatorKind::logistic_reaction, FlowMode::exact),
        SubProblem::diffusion(1.0, ButcherTableau::rk4(), 5)};
    SplittingScheme logistic_first = seq();

    const double tau = 0.05;
    const Field split = split_step(logistic_first, ops, f0, tau, bc);
    const auto deriv = [&](const Field& f) { return apply_derivative(ops[1], f); };
    Field alone = integrate(ops[1].tableau, deriv, f0, tau, 5, &bc);
    for (int i = 0; i < split.size(); ++i)
        CHECK(split.values[i] == alone.values[i]);
}

TEST_CASE("sequential over commuting exact linear flows adds exponents") {
    // linear reaction twice: eta e^{t} e^{t} = eta e^{2t}
    const Grid1D g(0.0, 4.0 * kPi, 30);
    Profile p;
    p.kind = Profile::Kind::sine;
    Field f0 = make_initial_field(g, p);
    const DirichletBC bc = DirichletBC::constant(0.0, 0.0);
    std::vector<SubProblem> ops{
        SubProblem::reaction(OperatorKind::linear_reaction, FlowMode::exact),
        SubProblem::reaction(OperatorKind::linear_reaction, FlowMode::exact)};
    const double tau = 0.37;
    const Field split = split_step(seq(), ops, f0, tau, bc);
    for (int i = 0; i < split.size(); ++i)
        CHECK(split.values[i] ==
              doctest::Approx(f0.values[i] * std::exp(2.0 * tau)).epsilon(1e-13));
}

TEST_CASE("strang over identical copies equals the single flow of 2 tau") {
    const Grid1D g(0.0, 4.0 * kPi, 30);
    Field f0 = make_initial_field(g, Profile{});
    const DirichletBC bc = DirichletBC::constant(1.0, 1.0);
    std::vector<SubProblem> ops{
        SubProblem::reaction(OperatorKind::logistic_reaction, FlowMode::exact),
        SubProblem::reaction(OperatorKind::logistic_reaction, FlowMode::exact)};
    const double tau = 0.37;
    const Field split = split_step(strang(), ops, f0, tau, bc);
    const Field direct = exact_flow(OperatorKind::logistic_reaction, f0, 2.0 * tau);
    for (int i = 0; i < split.size(); ++i)
        CHECK(split.values[i] == doctest::Approx(direct.values[i]).epsilon(1e-13));
}

TEST_CASE("weighted splitting reduces bitwise at omega 0 and 1") {
    ProblemSetup setup = fisher();
    const double tau = 0.1;

    SplittingScheme forward = seq();
    SplittingScheme backward = seq();
    backward.sequence = {1, 0};
    const Field a = split_step(forward, setup.ops, setup.f0, tau, setup.bc);
    const Field b = split_step(backward, setup.ops, setup.f0, tau, setup.bc);

    SplittingScheme w1 = SplittingScheme::parse("weighted(1)");
    const Field ra = split_step(w1, setup.ops, setup.f0, tau, setup.bc);
    for (int i = 0; i < ra.size(); ++i) CHECK(ra.values[i] == a.values[i]);

    SplittingScheme w0 = SplittingScheme::parse("weighted(0)");
    const Field rb = split_step(w0, setup.ops, setup.f0, tau, setup.bc);
    for (int i = 0; i < rb.size(); ++i) CHECK(rb.values[i] == b.values[i]);

    // omega = 1/2 equals the symmetric mean for two operators
    SplittingScheme half = SplittingScheme::parse("weighted(0.5)");
    SplittingScheme sym;
    sym.kind = SchemeKind::symmetric_weighted;
    const Field rh = split_step(half, setup.ops, setup.f0, tau, setup.bc);
    const Field rs = split_step(sym, setup.ops, setup.f0, tau, setup.bc);
    for (int i = 0; i < rh.size(); ++i)
        CHECK(rh.values[i] == doctest::Approx(rs.values[i]).epsilon(1e-15));
}

TEST_CASE("strang orientations differ on the logistic problem but both fit order 2") {
    ProblemSetup setup = fisher();
    const double tau = 0.1;
    const Field outer_diff = split_solve(strang({0, 1}), setup.ops, setup.f0, 1.0,
                                         tau, setup.bc);
    const Field outer_reac = split_solve(strang({1, 0}), setup.ops, setup.f0, 1.0,
                                         tau, setup.bc);
    CHECK(max_norm_diff(outer_diff, outer_reac) > 1e-8);

    const TauLadder ladder{{0.1, 0.05, 0.025}};
    for (const auto& sequence : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
        const OrderEstimate est = global_order(strang(sequence), setup.ops, setup.f0,
                                               setup.bc, ladder, 1.0);
        CHECK(std::abs(est.order() - 2.0) < 0.25);
    }
}

TEST_CASE("zero splitting error for the linear problem: order stays at 4") {
    ProblemSetup setup = make_problem("linear-rd", 30, ButcherTableau::rk4(), 1,
                                      "exact");
    const TauLadder ladder{{0.1, 0.0625, 0.05, 0.04, 0.025, 0.02}};
    const OrderEstimate est =
        global_order(seq(), setup.ops, setup.f0, setup.bc, ladder, 1.0);
    CHECK(std::abs(est.order() - 4.0) < 0.25); // no order-1 splitting cap
}

TEST_CASE("split_solve time bookkeeping and macro-step count") {
    ProblemSetup setup = fisher();
    const double tau = 0.1;
    const Field one = split_step(seq(), setup.ops, setup.f0, tau, setup.bc);
    const Field solved = split_solve(seq(), setup.ops, setup.f0, tau, tau, setup.bc);
    for (int i = 0; i < one.size(); ++i) CHECK(one.values[i] == solved.values[i]);
    CHECK(solved.time == tau);

    const Field ten = split_solve(seq(), setup.ops, setup.f0, 1.0, tau, setup.bc);
    CHECK(ten.time == 10 * tau); // t0 + k*tau, not accumulated

    CHECK_THROWS_AS(split_solve(seq(), setup.ops, setup.f0, 1.0, 0.3, setup.bc),
                    ConfigError);
}

TEST_CASE("logistic-only exact flow under any scheme matches the closed form") {
    const Grid1D g(0.0, 4.0 * kPi, 30);
    Field f0 = make_initial_field(g, Profile{});
    const DirichletBC bc = DirichletBC::constant(1.0, 1.0);
    std::vector<SubProblem> ops{
        SubProblem::reaction(OperatorKind::logistic_reaction, FlowMode::exact),
        SubProblem::reaction(OperatorKind::logistic_reaction, FlowMode::exact)};
    // two half-speed copies? no -- identical copies double the dynamics, so
    // compare one macro step of SEQ against the closed form over 2 tau.
    const double tau = 0.25;
    for (const char* name : {"seq", "strang", "sw"}) {
        const SplittingScheme scheme = SplittingScheme::parse(name);
        const Field split = split_solve(scheme, ops, f0, 1.0, tau, bc);
        const Field closed = exact_flow(OperatorKind::logistic_reaction, f0, 2.0);
        for (int i = 0; i < split.size(); ++i)
            CHECK(split.values[i] == doctest::Approx(closed.values[i]).epsilon(1e-13));
    }
}

TEST_CASE("fisher SEQ+rk4 at tau 0.01 lands on the frozen splitting-error level") {
    ProblemSetup setup = fisher();
    const Field ref = reference_solve(setup.ops, setup.bc, setup.f0, 1.0);
    const Field split = split_solve(seq(), setup.ops, setup.f0, 1.0, 0.01, setup.bc);
    const double err = max_norm_diff(split, ref);
    // measured once with the reference oracle and frozen; the splitting error
    // dominates every other error source at this step size
    CHECK(err == doctest::Approx(7.3266e-4).epsilon(0.02));
    CHECK(err < 1e-3);
}

TEST_CASE("diffusion stability ratio flags the explicit instability region") {
    ProblemSetup setup = fisher();
    // lambda = 4/dx^2 ~ 22.8; euler limit 2 -> tau* ~ 0.0877
    CHECK(diffusion_stability_ratio(seq(), setup.ops, setup.grid, 0.2) > 1.0);
    CHECK(diffusion_stability_ratio(seq(), setup.ops, setup.grid, 0.05) < 1.0);

    // strang with diffusion outer halves the diffusion step
    const double seq_ratio = diffusion_stability_ratio(seq(), setup.ops, setup.grid, 0.2);
    const double ms_ratio =
        diffusion_stability_ratio(strang({0, 1}), setup.ops, setup.grid, 0.2);
    CHECK(ms_ratio == doctest::Approx(0.5 * seq_ratio).epsilon(1e-12));

    // reaction stages contribute nothing, whether numerical or exact
    ProblemSetup exact = fisher(1, "exact");
    CHECK(diffusion_stability_ratio(seq(), exact.ops, setup.grid, 0.2) ==
          diffusion_stability_ratio(seq(), setup.ops, setup.grid, 0.2));
}

TEST_CASE("splitting rejects time-dependent boundary data") {
    ProblemSetup setup = fisher();
    DirichletBC moving;
    moving.left = [](double t) { return 1.0 + t; };
    moving.right = [](double) { return 1.0; };
    moving.left_rate = [](double) { return 1.0; };
    CHECK_THROWS_AS(split_step(seq(), setup.ops, setup.f0, 0.1, moving),
                    ConfigError);
}

TEST_CASE("scheme and operator count mismatches are configuration errors") {
    ProblemSetup setup = fisher();
    std::vector<SubProblem> one{setup.ops[0]};
    CHECK_THROWS_AS(split_step(seq(), one, setup.f0, 0.1, setup.bc), ConfigError);

    SplittingScheme bad = seq();
    bad.sequence = {0, 1, 2};
    CHECK_THROWS_AS(split_step(bad, setup.ops, setup.f0, 0.1, setup.bc), ConfigError);

    CHECK_THROWS_AS(split_step(seq(), setup.ops, setup.f0, -0.1, setup.bc),
                    ConfigError);
}
