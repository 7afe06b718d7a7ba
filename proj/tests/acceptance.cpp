// Acceptance suite: runs every shipped reproduction gate and prints one
// pass/fail line per criterion. Exit code 0 only when all criteria hold.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "splitlab/experiments.hpp"
#include "splitlab/format.hpp"
#include "splitlab/odebench.hpp"
#include "splitlab/operators.hpp"
#include "splitlab/reference.hpp"

using namespace splitlab;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str());
    if (!pass) ++failures;
}

// Worst absolute deviation from the published value over the gated cells,
// plus a list of any out-of-band cells.
std::string table_detail(const TableResult& t) {
    double worst = 0.0;
    std::string bad;
    for (const CellResult& c : t.cells) {
        if (c.expected == nullptr || !c.expected->gated()) continue;
        if (c.expected->published)
            worst = std::max(worst,
                             std::abs(c.estimate.order() - *c.expected->published));
        if (!c.gate_passes())
            bad += " " + c.scheme + "/" + c.integrator + "=" + fmt(c.estimate.order());
    }
    std::string detail = "max |measured-published| = " + fmt(worst);
    if (!bad.empty()) detail += "; out of band:" + bad;
    return detail;
}

void table_criterion(int criterion, int table_id, const std::string& name) {
    ExperimentConfig cfg;
    const TableResult t = run_table(table_id, cfg);
    report(criterion, name, t.all_gates_pass(), table_detail(t));
}

std::string read_data_rows(const std::string& path) {
    std::ifstream is(path);
    std::string line, out;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') continue;
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace

int main() {
    // 1. zero splitting error: linear problem orders equal the integrator order
    table_criterion(1, 5, "table 5, zero splitting error, orders = r +/- 0.25");

    // 2. logistic problem, numerical flows, h = tau
    table_criterion(2, 3, "table 3, global orders, h = tau, +/- 0.25");

    // 3. exact logistic flow
    table_criterion(3, 4, "table 4, global orders with exact reaction flow, +/- 0.25");

    // 4. local orders, h = 0.1 tau
    table_criterion(4, 2, "table 2, local orders, h = 0.1 tau");

    // 5. bounded-operator bench + leading-error constant
    {
        ExperimentConfig cfg;
        const TableResult t = run_table(1, cfg);
        bool pass = t.all_gates_pass();
        std::string detail = table_detail(t);
        const LeadingErrorCheck lead = seq_euler_leading_error(
            BenchProblem::standard(), 1e-4, SeqEulerVariant::linear_first);
        detail += "; leading-constant rel dev = " + fmt(lead.rel_dev);
        pass = pass && lead.rel_dev <= 0.05;
        report(5, "table 1 bench, cells +/- 0.2 and SEQ+euler error constant to 5%",
               pass, detail);
    }

    // 6. commutation residuals
    {
        const CheckReport r = run_check("commutation", {});
        std::string detail = "linear max = " + fmt(r.lines[0].value) +
                             ", logistic max = " + fmt(r.lines[1].value) +
                             ", node-7 dev = " + fmt(r.lines[2].value);
        report(6, "commutation residual: linear zero, logistic matches -2(d_x phi)^2",
               r.pass(), detail);
    }

    // 7. exact-flow property suite
    {
        bool pass = true;
        std::string detail;

        const Grid1D g(0.0, 1.0, 2);
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> etas(0.1, 1.9);
        std::uniform_real_distribution<double> times(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial) {
            Field f(g, etas(rng));
            const double t1 = times(rng), t2 = times(rng);
            const Field direct = exact_flow(OperatorKind::logistic_reaction, f, t1 + t2);
            const Field chained = exact_flow(
                OperatorKind::logistic_reaction,
                exact_flow(OperatorKind::logistic_reaction, f, t1), t2);
            worst = std::max(worst, std::abs(direct.values[1] - chained.values[1]));
        }
        pass = pass && worst <= 1e-13;
        detail += "semigroup dev = " + fmt(worst);

        Field ones(g, 1.0), zeros(g, 0.0);
        const Field f1 = exact_flow(OperatorKind::logistic_reaction, ones, 3.0);
        const Field f0 = exact_flow(OperatorKind::logistic_reaction, zeros, 3.0);
        const bool fixed = f1.values[1] == 1.0 && f0.values[1] == 0.0;
        pass = pass && fixed;
        detail += fixed ? ", fixed points exact" : ", fixed points DRIFTED";

        const CheckReport expo = run_check("exponential", {});
        double worst_expo = 0.0;
        for (const CheckLine& l : expo.lines) worst_expo = std::max(worst_expo, l.value);
        pass = pass && expo.pass();
        detail += ", exponential identity dev = " + fmt(worst_expo);

        report(7, "exact-flow properties: semigroup 1e-13, fixed points, Lie identity",
               pass, detail);
    }

    // 8. wave validation under grid refinement
    {
        const CheckReport r = run_check("wave", {});
        report(8, "wave validation, spatial order 2 +/- 0.3 over N in {30,60,120}",
               r.pass(), "fitted order = " + fmt(r.lines.back().value));
    }

    // 9. reference self-consistency
    {
        ProblemSetup setup = make_problem("fisher", 30, ButcherTableau::rk4(), 1,
                                          "numerical");
        ReferenceSpec half;
        half.tau_ref = 0.005;
        const Field a = reference_solve(setup.ops, setup.bc, setup.f0, 1.0);
        const Field b = reference_solve(setup.ops, setup.bc, setup.f0, 1.0, half);
        const double dev = max_norm_diff(a, b);
        report(9, "reference step halving moves t=1 solution by <= 1e-5", dev <= 1e-5,
               "max-norm change = " + fmt(dev));
    }

    // 10. byte-identical CSV data rows across worker counts
    {
        const std::string dir = "acceptance_out";
        ExperimentConfig one;
        one.workers = 1;
        ExperimentConfig many;
        many.workers = 4;
        const auto pa = write_table_csvs(run_table(5, one), dir + "/w1");
        const auto pb = write_table_csvs(run_table(5, many), dir + "/w4");
        bool pass = pa.size() == pb.size();
        for (size_t i = 0; pass && i < pa.size(); ++i)
            pass = read_data_rows(pa[i]) == read_data_rows(pb[i]);
        report(10, "table reruns byte-reproduce CSV data rows across worker counts",
               pass, pass ? "identical" : "rows differ");
        std::filesystem::remove_all(dir);
    }

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
