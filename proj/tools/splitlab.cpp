// Experiment driver: reproduces the shipped order tables and figure data,
// runs the consistency checks, and exposes every solver knob for free-form
// runs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitlab/errors.hpp"
#include "splitlab/experiments.hpp"
#include "splitlab/format.hpp"
#include "splitlab/odebench.hpp"
#include "splitlab/order.hpp"
#include "splitlab/reference.hpp"

using namespace splitlab;

namespace {

void add_common_options(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--scheme", cfg.scheme,
                    "splitting scheme: seq, strang, sw, weighted(omega)");
    sub->add_option("--integrator", cfg.integrator,
                    "one-step method: euler, midpoint, heun3, rk4");
    sub->add_option("--sequence", cfg.sequence,
                    "operator application order, comma-separated names, first applied first");
    sub->add_option("--substep-ratio", cfg.substep_ratio,
                    "numerical substeps per macro step (h = tau/ratio)");
    sub->add_option("--tau-ladder", cfg.tau_ladder, "macro steps, decreasing")
        ->delimiter(',');
    sub->add_option("--horizon", cfg.horizon, "end time of global runs");
    sub->add_option("--grid-cells", cfg.grid_cells, "spatial cells (nodes - 1)");
    sub->add_option("--reaction-flow", cfg.reaction_flow,
                    "reaction sub-flow solver: exact or numerical");
    sub->add_option("--out", cfg.out_dir, "output directory for CSV files");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
    sub->fallthrough();
}

void print_table(const TableResult& t) {
    std::printf("table %d: %s\n", t.id, t.title.c_str());
    std::printf("  # %s\n", t.config.echo().c_str());
    std::printf("  %-4s %-15s %-9s %12s %12s %12s  %s\n", "", "variant", "method",
                "measured", "published", "delta", "gate");
    for (const CellResult& c : t.cells) {
        const double measured = c.estimate.order();
        std::string published = "-", delta = "-";
        if (c.expected && c.expected->published) {
            published = fmt(*c.expected->published);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%+.4f", measured - *c.expected->published);
            delta = buf;
        }
        const char* gate = (c.expected && c.expected->gated())
                               ? (c.gate_passes() ? "ok" : "OUT OF BAND")
                               : "-";
        std::printf("  %-4s %-15s %-9s %12.4f %12s %12s  %s\n", c.scheme.c_str(),
                    c.variant.c_str(), c.integrator.c_str(), measured,
                    published.c_str(), delta.c_str(), gate);
    }
    if (t.id == 2) {
        // Which palindromic orientation reproduces the published row?
        const TableExpectations& expect = published_table(2);
        double dev[2] = {0.0, 0.0};
        const char* variants[2] = {"diffusion-outer", "reaction-outer"};
        for (int v = 0; v < 2; ++v)
            for (const char* integ : {"euler", "heun3", "rk4"}) {
                const CellResult* cell = t.find("ms", integ, variants[v]);
                const ExpectedCell* e = expect.find("ms", integ);
                if (cell && e && e->published)
                    dev[v] = std::max(dev[v],
                                      std::abs(cell->estimate.order() - *e->published));
            }
        std::printf("  palindromic orientation closest to the published row: %s "
                    "(max dev %s vs %s)\n",
                    dev[0] <= dev[1] ? variants[0] : variants[1], fmt(dev[0]).c_str(),
                    fmt(dev[1]).c_str());
    }
}

void print_check(const CheckReport& r) {
    std::printf("check %s\n", r.check.c_str());
    for (const CheckLine& l : r.lines)
        std::printf("  [%s] %-45s value = %-24s requires %s\n",
                    l.pass ? "ok" : "FAIL", l.name.c_str(), fmt(l.value).c_str(),
                    l.requirement.c_str());
    std::printf("check %s: %s\n", r.check.c_str(), r.pass() ? "pass" : "fail");
}

void write_run_csv(const ExperimentConfig& cfg, const OrderEstimate& est,
                   const std::string& label) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/run.csv";
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    os << "# splitlab run " << label << "; " << cfg.echo() << "\n";
    os << "tau,error,included,exclusion,pairwise_rho,fitted_order\n";
    for (const LadderPoint& p : est.points) {
        std::string rho;
        for (const PairRatio& pr : est.ratios)
            if (pr.tau_coarse == p.tau && pr.valid) rho = fmt(pr.rho);
        os << fmt(p.tau) << ',' << fmt(p.error) << ',' << (p.included ? 1 : 0) << ','
           << p.exclusion << ',' << rho << ',' << fmt(est.order()) << "\n";
    }
    std::printf("wrote %s\n", path.c_str());
}

int run_free_form(ExperimentConfig cfg, const std::string& kind) {
    if (cfg.problem.empty()) cfg.problem = "fisher";
    if (cfg.scheme.empty()) cfg.scheme = "seq";
    if (cfg.integrator.empty()) cfg.integrator = "rk4";
    if (cfg.horizon <= 0.0) cfg.horizon = 1.0;
    if (kind != "local" && kind != "global")
        throw ConfigError("--kind must be 'local' or 'global'");

    if (cfg.problem == "wave") {
        ReferenceSpec spec;
        const WaveStudy study =
            wave_refinement_study(-12.0, 14.0, {30, 60, 120}, 1.0, cfg.horizon, spec);
        for (const WaveReport& r : study.reports)
            std::printf("N = %3d  dx = %-22s max error = %s\n", r.n_cells,
                        fmt(r.dx).c_str(), fmt(r.max_error).c_str());
        std::printf("fitted spatial order = %s\n",
                    fmt(study.fitted_spatial_order).c_str());
        return 0;
    }

    const bool local = kind == "local";
    if (cfg.substep_ratio <= 0) cfg.substep_ratio = local ? 10 : 1;
    if (cfg.tau_ladder.empty()) {
        cfg.tau_ladder =
            (local ? TauLadder::standard_tenth() : TauLadder::standard()).taus;
    }

    OrderEstimate est;
    if (cfg.problem == "bench") {
        if (!local)
            throw ConfigError("the bench problem measures local orders; use --kind local");
        BenchProblem problem = BenchProblem::standard();
        problem.ladder = TauLadder{cfg.tau_ladder};
        est = bench_local_order(SplittingScheme::parse(cfg.scheme),
                                ButcherTableau::by_name(cfg.integrator), problem,
                                cfg.substep_ratio);
    } else {
        ProblemSetup setup =
            make_problem(cfg.problem, cfg.grid_cells,
                         ButcherTableau::by_name(cfg.integrator), cfg.substep_ratio,
                         cfg.reaction_flow);
        SplittingScheme scheme = SplittingScheme::parse(cfg.scheme);
        if (!cfg.sequence.empty()) scheme.sequence = setup.parse_sequence(cfg.sequence);
        const TauLadder ladder{cfg.tau_ladder};
        est = local ? local_order(scheme, setup.ops, setup.f0, setup.bc, ladder)
                    : global_order(scheme, setup.ops, setup.f0, setup.bc, ladder,
                                   cfg.horizon);
        if (!cfg.snapshot_path.empty()) {
            const Field ref =
                reference_solve(setup.ops, setup.bc, setup.f0, cfg.horizon);
            std::ofstream os(cfg.snapshot_path);
            if (!os)
                throw ConfigError("cannot open snapshot file '" + cfg.snapshot_path +
                                  "'");
            os << "# splitlab reference snapshot at t=" << fmt(cfg.horizon) << "; "
               << cfg.echo() << "\n";
            write_field_csv(os, ref);
            std::printf("wrote %s\n", cfg.snapshot_path.c_str());
        }
    }

    std::printf("%s + %s on %s: %s order = %s\n", cfg.scheme.c_str(),
                cfg.integrator.c_str(), cfg.problem.c_str(), kind.c_str(),
                fmt(est.order()).c_str());
    for (const LadderPoint& p : est.points) {
        const std::string note =
            p.included ? "" : "  [excluded: " + p.exclusion + "]";
        std::printf("  tau = %-22s E = %-24s%s\n", fmt(p.tau).c_str(),
                    fmt(p.error).c_str(), note.c_str());
    }
    write_run_csv(cfg, est, kind);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"splitlab: operator-splitting laboratory for 1-D reaction-diffusion "
                 "problems"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI file; subcommand options live in a [table]/[figures]/"
                   "[check]/[run] section");

    ExperimentConfig cfg;
    int table_id = 0;
    std::string check_name;
    std::string run_kind = "global";

    CLI::App* table = app.add_subcommand("table", "reproduce a shipped order table");
    table->add_option("id", table_id, "table id")->required()->check(CLI::Range(1, 5));
    add_common_options(table, cfg);

    CLI::App* figures =
        app.add_subcommand("figures", "order-vs-step-ratio series, three-operator splitting");
    add_common_options(figures, cfg);

    CLI::App* check = app.add_subcommand("check", "consistency checks");
    check->add_option("name", check_name, "commutation | wave | exponential")
        ->required();
    add_common_options(check, cfg);

    CLI::App* run = app.add_subcommand("run", "free-form order measurement");
    run->add_option("--problem", cfg.problem,
                    "fisher | linear-rd | three-op | bench | wave");
    run->add_option("--kind", run_kind, "local or global order");
    run->add_option("--snapshot", cfg.snapshot_path,
                    "write the reference solution at the horizon to this CSV");
    add_common_options(run, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help exits cleanly, usage errors are config errors
    }

    try {
        if (*table) {
            const TableResult result = run_table(table_id, cfg);
            print_table(result);
            for (const std::string& path : write_table_csvs(result, cfg.out_dir))
                std::printf("wrote %s\n", path.c_str());
            return 0;
        }
        if (*figures) {
            const FiguresResult result = run_figures(cfg);
            for (const FigureSeries& s : result.series) {
                double mean = 0.0;
                int n = 0;
                for (const PairRatio& pr : s.ratios)
                    if (pr.valid) { mean += pr.rho; ++n; }
                std::printf("  %-20s %-30s %-6s mean order = %.4f\n", s.family.c_str(),
                            s.label.c_str(), s.integrator.c_str(),
                            n ? mean / n : 0.0);
            }
            for (const std::string& path : write_figures_csvs(result, cfg.out_dir))
                std::printf("wrote %s\n", path.c_str());
            return 0;
        }
        if (*check) {
            const CheckReport report = run_check(check_name, cfg);
            print_check(report);
            return report.pass() ? 0 : 1;
        }
        return run_free_form(cfg, run_kind);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const BlowUpError& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return 3;
    } catch (const OverflowError& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
