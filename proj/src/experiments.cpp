#include "splitlab/experiments.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "splitlab/errors.hpp"
#include "splitlab/format.hpp"
#include "splitlab/waves.hpp"

namespace splitlab {

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt(v[i]);
    }
    return out;
}

std::vector<double> default_ladder(bool local) {
    return (local ? TauLadder::standard_tenth() : TauLadder::standard()).taus;
}

int effective_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    os << "schema=1";
    if (!problem.empty()) os << " problem=" << problem;
    if (!scheme.empty()) os << " scheme=" << scheme;
    if (!integrator.empty()) os << " integrator=" << integrator;
    if (!sequence.empty()) os << " sequence=" << sequence;
    if (substep_ratio > 0) os << " substep-ratio=" << substep_ratio;
    if (!tau_ladder.empty()) os << " tau-ladder=" << join_doubles(tau_ladder);
    if (horizon > 0.0) os << " horizon=" << fmt(horizon);
    if (grid_cells > 0) os << " grid-cells=" << grid_cells;
    if (!reaction_flow.empty()) os << " reaction-flow=" << reaction_flow;
    if (workers > 0) os << " workers=" << workers;
    return os.str();
}

std::vector<int> ProblemSetup::parse_sequence(const std::string& csv_names) const {
    std::vector<int> indices;
    std::stringstream ss(csv_names);
    std::string item;
    while (std::getline(ss, item, ',')) {
        bool found = false;
        for (size_t i = 0; i < op_names.size(); ++i) {
            if (op_names[i] == item) {
                indices.push_back(static_cast<int>(i));
                found = true;
                break;
            }
        }
        if (!found)
            throw ConfigError("sequence entry '" + item + "' is not an operator of problem '" +
                              name + "'");
    }
    return indices;
}

ProblemSetup make_problem(const std::string& which, int grid_cells,
                          const ButcherTableau& tableau, int substep_ratio,
                          const std::string& reaction_flow) {
    if (grid_cells <= 0) grid_cells = 30;
    const FlowMode mode = [&] {
        if (reaction_flow.empty() || reaction_flow == "numerical")
            return FlowMode::numerical;
        if (reaction_flow == "exact") return FlowMode::exact;
        throw ConfigError("reaction-flow must be 'exact' or 'numerical', got '" +
                          reaction_flow + "'");
    }();

    ProblemSetup setup;
    setup.name = which;
    if (which == "fisher") {
        setup.grid = Grid1D(0.0, 4.0 * std::numbers::pi, grid_cells);
        setup.f0 = make_initial_field(setup.grid, Profile{});
        setup.bc = DirichletBC::constant(1.0, 1.0);
        setup.ops = {SubProblem::diffusion(1.0, tableau, substep_ratio),
                     SubProblem::reaction(OperatorKind::logistic_reaction, mode,
                                          tableau, substep_ratio)};
        setup.op_names = {"diffusion", "logistic"};
    } else if (which == "linear-rd") {
        // Homogeneous boundary data keeps the boundary coupling term out of
        // the split flows, so the linear reaction commutes with diffusion
        // exactly and the splitting itself is error-free.
        setup.grid = Grid1D(0.0, 4.0 * std::numbers::pi, grid_cells);
        Profile p;
        p.kind = Profile::Kind::sine;
        p.amplitude = 0.9;
        setup.f0 = make_initial_field(setup.grid, p);
        setup.bc = DirichletBC::constant(0.0, 0.0);
        setup.ops = {SubProblem::diffusion(1.0, tableau, substep_ratio),
                     SubProblem::reaction(OperatorKind::linear_reaction, mode,
                                          tableau, substep_ratio)};
        setup.op_names = {"diffusion", "linear"};
    } else if (which == "three-op") {
        setup.grid = Grid1D(0.0, 4.0 * std::numbers::pi, grid_cells);
        setup.f0 = make_initial_field(setup.grid, Profile{});
        setup.bc = DirichletBC::constant(1.0, 1.0);
        setup.ops = {SubProblem::diffusion(1.0, tableau, substep_ratio),
                     SubProblem::reaction(OperatorKind::linear_reaction, mode,
                                          tableau, substep_ratio),
                     SubProblem::reaction(OperatorKind::quadratic_reaction, mode,
                                          tableau, substep_ratio)};
        setup.op_names = {"diffusion", "linear", "quadratic"};
    } else {
        throw ConfigError("unknown problem '" + which +
                          "' (expected fisher, linear-rd, three-op)");
    }
    return setup;
}

bool TableResult::all_gates_pass() const {
    for (const CellResult& c : cells)
        if (!c.gate_passes()) return false;
    return true;
}

const CellResult* TableResult::find(std::string_view scheme, std::string_view integrator,
                                    std::string_view variant) const {
    for (const CellResult& c : cells)
        if (c.scheme == scheme && c.integrator == integrator && c.variant == variant)
            return &c;
    return nullptr;
}

void run_parallel(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::min(std::max(1, workers), std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

struct CellSpec {
    std::string scheme;
    std::string variant;
    std::string integrator;
};

SplittingScheme scheme_for_cell(const CellSpec& spec, const ProblemSetup& setup) {
    SplittingScheme scheme;
    if (spec.scheme == "seq") {
        scheme.kind = SchemeKind::sequential;
    } else if (spec.scheme == "sw") {
        scheme.kind = SchemeKind::symmetric_weighted;
    } else if (spec.scheme == "ms") {
        scheme.kind = SchemeKind::strang;
        if (spec.variant == "reaction-outer") {
            // reverse of the declaration order [diffusion, reaction]
            scheme.sequence = {1, 0};
        }
    } else {
        scheme = SplittingScheme::parse(spec.scheme);
    }
    scheme.validate(static_cast<int>(setup.ops.size()));
    return scheme;
}

const std::vector<std::string>& integrator_columns() {
    return ButcherTableau::names();
}

} // namespace

TableResult run_table(int id, ExperimentConfig cfg) {
    const TableExpectations& expect = published_table(id);
    const bool local = (id == 1 || id == 2);

    TableResult result;
    result.id = id;
    result.title = std::string(expect.title);

    // Preset defaults, overridable from the config.
    if (cfg.substep_ratio <= 0) cfg.substep_ratio = local ? 10 : 1;
    if (cfg.tau_ladder.empty()) cfg.tau_ladder = default_ladder(local);
    if (cfg.horizon <= 0.0) cfg.horizon = 1.0;
    if (cfg.grid_cells <= 0) cfg.grid_cells = 30;
    cfg.workers = effective_workers(cfg.workers);
    switch (id) {
    case 1: cfg.problem = "bench"; cfg.reaction_flow = "numerical"; break;
    case 2: cfg.problem = "fisher"; cfg.reaction_flow = "numerical"; break;
    case 3: cfg.problem = "fisher"; cfg.reaction_flow = "numerical"; break;
    case 4: cfg.problem = "fisher"; cfg.reaction_flow = "exact"; break;
    case 5: cfg.problem = "linear-rd"; cfg.reaction_flow = "exact"; break;
    default: break;
    }

    std::vector<CellSpec> specs;
    for (const std::string& scheme : {std::string("seq"), std::string("sw"),
                                      std::string("ms")}) {
        for (const std::string& integ : integrator_columns()) {
            if (scheme == "ms" && id == 2) {
                // The published orientation of the palindromic rows is not
                // stated; compute both and report which one matches.
                specs.push_back({scheme, "diffusion-outer", integ});
                specs.push_back({scheme, "reaction-outer", integ});
            } else {
                specs.push_back({scheme, "", integ});
            }
        }
    }

    TauLadder ladder{cfg.tau_ladder};
    std::vector<CellResult> cells(specs.size());
    run_parallel(static_cast<int>(specs.size()), cfg.workers, [&](int i) {
        const CellSpec& spec = specs[static_cast<size_t>(i)];
        const ButcherTableau& tab = ButcherTableau::by_name(spec.integrator);
        CellResult cell;
        cell.scheme = spec.scheme;
        cell.variant = spec.variant;
        cell.integrator = spec.integrator;
        if (cfg.problem == "bench") {
            BenchProblem problem = BenchProblem::standard();
            problem.ladder = ladder;
            SplittingScheme scheme;
            scheme.kind = spec.scheme == "seq" ? SchemeKind::sequential
                          : spec.scheme == "sw" ? SchemeKind::symmetric_weighted
                                                : SchemeKind::strang;
            cell.estimate =
                bench_local_order(scheme, tab, problem, cfg.substep_ratio);
        } else {
            ProblemSetup setup = make_problem(cfg.problem, cfg.grid_cells, tab,
                                              cfg.substep_ratio, cfg.reaction_flow);
            SplittingScheme scheme = scheme_for_cell(spec, setup);
            if (local) {
                cell.estimate =
                    local_order(scheme, setup.ops, setup.f0, setup.bc, ladder);
            } else {
                cell.estimate = global_order(scheme, setup.ops, setup.f0, setup.bc,
                                             ladder, cfg.horizon);
            }
        }
        // The reaction-outer palindromic rows carry no published value.
        if (spec.variant != "reaction-outer")
            cell.expected = expect.find(spec.scheme, spec.integrator);
        cells[static_cast<size_t>(i)] = std::move(cell);
    });

    result.cells = std::move(cells);
    result.config = std::move(cfg);
    return result;
}

namespace {

std::ofstream open_output(const std::string& out_dir, const std::string& file) {
    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/" + file;
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    return os;
}

} // namespace

std::vector<std::string> write_table_csvs(const TableResult& result,
                                          const std::string& out_dir) {
    const std::string base = "table" + std::to_string(result.id);
    std::vector<std::string> paths;

    {
        std::ofstream os = open_output(out_dir, base + ".csv");
        os << "# splitlab " << base << " ladder; " << result.config.echo() << "\n";
        os << "scheme,variant,integrator,n_operators,substep_ratio,tau,error,"
              "included,exclusion,pairwise_rho,fitted_order\n";
        for (const CellResult& cell : result.cells) {
            const OrderEstimate& est = cell.estimate;
            // Pairwise ratios are defined between consecutive included points;
            // key them by their coarse tau.
            const int n_operators = result.config.problem == "three-op" ? 3 : 2;
            for (const LadderPoint& p : est.points) {
                std::string rho;
                for (const PairRatio& pr : est.ratios)
                    if (pr.tau_coarse == p.tau && pr.valid) rho = fmt(pr.rho);
                os << cell.scheme << ',' << cell.variant << ',' << cell.integrator
                   << ',' << n_operators << ',' << result.config.substep_ratio << ','
                   << fmt(p.tau) << ',' << fmt(p.error) << ',' << (p.included ? 1 : 0)
                   << ',' << p.exclusion << ',' << rho << ',' << fmt(est.order())
                   << "\n";
            }
        }
        paths.push_back(out_dir + "/" + base + ".csv");
    }
    {
        std::ofstream os = open_output(out_dir, base + "_summary.csv");
        os << "# splitlab " << base << " summary; " << result.config.echo() << "\n";
        os << "scheme,variant,integrator,measured,published,delta,gated,within_band\n";
        for (const CellResult& cell : result.cells) {
            const double measured = cell.estimate.order();
            std::string published, delta;
            bool gated = false;
            if (cell.expected != nullptr) {
                gated = cell.expected->gated();
                if (cell.expected->published) {
                    published = fmt(*cell.expected->published);
                    delta = fmt(measured - *cell.expected->published);
                }
            }
            os << cell.scheme << ',' << cell.variant << ',' << cell.integrator << ','
               << fmt(measured) << ',' << published << ',' << delta << ','
               << (gated ? 1 : 0) << ',' << (cell.gate_passes() ? 1 : 0) << "\n";
        }
        paths.push_back(out_dir + "/" + base + "_summary.csv");
    }
    return paths;
}

const FigureSeries* FiguresResult::find(std::string_view family, std::string_view label,
                                        std::string_view integrator) const {
    for (const FigureSeries& s : series)
        if (s.family == family && s.label == label && s.integrator == integrator)
            return &s;
    return nullptr;
}

FiguresResult run_figures(ExperimentConfig cfg) {
    if (cfg.substep_ratio <= 0) cfg.substep_ratio = 1;
    if (cfg.tau_ladder.empty())
        cfg.tau_ladder = {0.1, 0.0625, 0.05, 0.04, 0.025, 0.02};
    if (cfg.horizon <= 0.0) cfg.horizon = 1.0;
    if (cfg.grid_cells <= 0) cfg.grid_cells = 30;
    if (cfg.reaction_flow.empty()) cfg.reaction_flow = "exact";
    cfg.problem = "three-op";
    cfg.workers = effective_workers(cfg.workers);

    const TauLadder ladder{cfg.tau_ladder};
    const std::vector<std::string> integrators{"heun3", "rk4"};

    struct SeriesSpec {
        std::string family;
        std::string label;
        std::string integrator;
        std::string problem;   // three-op | linear-rd | single
        SplittingScheme scheme;
    };
    std::vector<SeriesSpec> specs;

    // All sequential application orders of the three operators.
    const std::vector<std::vector<int>> perms = {
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const std::vector<std::string> names{"diffusion", "linear", "quadratic"};
    auto label_of = [&](const std::vector<int>& seq) {
        std::string label;
        for (size_t i = 0; i < seq.size(); ++i) {
            if (i) label += '>';
            label += names[static_cast<size_t>(seq[i])];
        }
        return label;
    };

    for (const std::string& integ : integrators) {
        for (const auto& perm : perms) {
            SplittingScheme s;
            s.kind = SchemeKind::sequential;
            s.sequence = perm;
            specs.push_back({"seq", label_of(perm), integ, "three-op", s});
        }
        {
            SplittingScheme s;
            s.kind = SchemeKind::symmetric_weighted;
            specs.push_back({"sw", "mean-of-6-orders", integ, "three-op", s});
        }
        // Palindromic compositions: outer>middle>inner application order.
        for (const std::vector<int>& seq : {std::vector<int>{2, 1, 0},
                                            std::vector<int>{1, 2, 0}}) {
            SplittingScheme s;
            s.kind = SchemeKind::strang;
            s.sequence = seq;
            specs.push_back({"ms", label_of(seq), integ, "three-op", s});
        }
        {
            // No splitting at all: the integrator's own order on diffusion.
            SplittingScheme s;
            specs.push_back({"single-op", "diffusion-only", integ, "single", s});
        }
        {
            // Diffusion + linear reaction with the exact flow: the splitting
            // contributes no error, only the integrator's.
            SplittingScheme s;
            s.kind = SchemeKind::sequential;
            specs.push_back(
                {"zero-splitting-pair", "diffusion>linear", integ, "linear-rd", s});
        }
    }

    std::vector<FigureSeries> series(specs.size());
    run_parallel(static_cast<int>(specs.size()), cfg.workers, [&](int i) {
        const SeriesSpec& spec = specs[static_cast<size_t>(i)];
        const ButcherTableau& tab = ButcherTableau::by_name(spec.integrator);
        FigureSeries out;
        out.family = spec.family;
        out.label = spec.label;
        out.integrator = spec.integrator;
        out.taus = ladder.taus;

        if (spec.problem == "single") {
            ProblemSetup setup = make_problem("fisher", cfg.grid_cells, tab,
                                              cfg.substep_ratio, "numerical");
            const std::vector<SubProblem> only{setup.ops[0]};
            const Field ref =
                reference_solve(only, setup.bc, setup.f0, cfg.horizon);
            const auto deriv = [&](const Field& f) {
                return apply_derivative(only[0], f);
            };
            for (double tau : ladder.taus) {
                const int n = static_cast<int>(std::llround(cfg.horizon / tau)) *
                              cfg.substep_ratio;
                Field sol = integrate(tab, deriv, setup.f0, cfg.horizon, n, &setup.bc);
                out.errors.push_back(max_norm_diff(sol, ref));
            }
        } else {
            ProblemSetup setup =
                make_problem(spec.problem, cfg.grid_cells, tab, cfg.substep_ratio,
                             spec.problem == "three-op" ? cfg.reaction_flow : "exact");
            SplittingScheme scheme = spec.scheme;
            scheme.validate(static_cast<int>(setup.ops.size()));
            const Field ref =
                reference_solve(setup.ops, setup.bc, setup.f0, cfg.horizon);
            for (double tau : ladder.taus) {
                Field sol =
                    split_solve(scheme, setup.ops, setup.f0, cfg.horizon, tau, setup.bc);
                out.errors.push_back(max_norm_diff(sol, ref));
            }
        }
        out.ratios = order_ratio_series(out.errors, out.taus);
        series[static_cast<size_t>(i)] = std::move(out);
    });

    FiguresResult result;
    result.config = std::move(cfg);
    result.series = std::move(series);
    return result;
}

std::vector<std::string> write_figures_csvs(const FiguresResult& result,
                                            const std::string& out_dir) {
    std::vector<std::string> paths;
    {
        std::ofstream os = open_output(out_dir, "figures_orders.csv");
        os << "# splitlab figure order series; " << result.config.echo() << "\n";
        os << "family,label,integrator,tau_coarse,tau_fine,step_ratio,rho\n";
        for (const FigureSeries& s : result.series)
            for (const PairRatio& pr : s.ratios) {
                if (!pr.valid) continue;
                os << s.family << ',' << s.label << ',' << s.integrator << ','
                   << fmt(pr.tau_coarse) << ',' << fmt(pr.tau_fine) << ','
                   << fmt(pr.tau_coarse / pr.tau_fine) << ',' << fmt(pr.rho) << "\n";
            }
        paths.push_back(out_dir + "/figures_orders.csv");
    }
    {
        std::ofstream os = open_output(out_dir, "figures_errors.csv");
        os << "# splitlab figure error ladders; " << result.config.echo() << "\n";
        os << "family,label,integrator,tau,error\n";
        for (const FigureSeries& s : result.series)
            for (size_t i = 0; i < s.taus.size(); ++i)
                os << s.family << ',' << s.label << ',' << s.integrator << ','
                   << fmt(s.taus[i]) << ',' << fmt(s.errors[i]) << "\n";
        paths.push_back(out_dir + "/figures_errors.csv");
    }
    return paths;
}

bool CheckReport::pass() const {
    for (const CheckLine& l : lines)
        if (!l.pass) return false;
    return true;
}

CheckReport run_check(const std::string& which, ExperimentConfig cfg) {
    CheckReport report;
    report.check = which;

    if (which == "commutation") {
        cfg.problem = "fisher";
        if (cfg.grid_cells <= 0) cfg.grid_cells = 30;
        const Grid1D grid(0.0, 4.0 * std::numbers::pi, cfg.grid_cells);
        const Field f = make_initial_field(grid, Profile{});

        const Field linear = commutation_residual(OperatorKind::linear_reaction, f);
        double linear_max = 0.0;
        for (double v : linear.values) linear_max = std::max(linear_max, std::abs(v));
        report.lines.push_back({"linear reaction residual (max |r|)", linear_max,
                                "== 0 exactly", linear_max == 0.0});

        const Field logistic =
            commutation_residual(OperatorKind::logistic_reaction, f);
        double logistic_max = 0.0;
        for (double v : logistic.values)
            logistic_max = std::max(logistic_max, std::abs(v));
        report.lines.push_back({"logistic residual on paper-sine (max |r|)",
                                logistic_max, "> 0.1", logistic_max > 0.1});

        // Independent recomputation at one interior node.
        const int i = 7;
        const double grad =
            (f.values[i + 1] - f.values[i - 1]) / (2.0 * grid.dx);
        const double by_hand = -2.0 * grad * grad;
        const double dev = std::abs(logistic.values[i] - by_hand);
        report.lines.push_back({"logistic residual node 7 vs -2*(d_x phi)^2",
                                dev, "<= 1e-12 and negative",
                                dev <= 1e-12 && logistic.values[i] < 0.0});
    } else if (which == "wave") {
        const std::vector<int> cells{30, 60, 120};
        ReferenceSpec spec;
        const WaveStudy study =
            wave_refinement_study(-12.0, 14.0, cells, 1.0, 1.0, spec);
        for (const WaveReport& r : study.reports)
            report.lines.push_back({"max error at N=" + std::to_string(r.n_cells),
                                    r.max_error, "decreases under refinement", true});
        for (size_t i = 1; i < study.reports.size(); ++i)
            report.lines[i].pass =
                study.reports[i].max_error < study.reports[i - 1].max_error;
        report.lines.push_back(
            {"fitted spatial order", study.fitted_spatial_order, "within 2 +/- 0.3",
             std::abs(study.fitted_spatial_order - 2.0) <= 0.3});
    } else if (which == "exponential") {
        const SmallMatrix rot(2, {0.0, 1.0, -1.0, 0.0});
        const SmallMatrix rot2(2, {0.0, 2.0, -2.0, 0.0});
        const SmallMatrix scaled_identity(2, {2.0, 0.0, 0.0, 2.0});
        const SmallMatrix diag_a(2, {1.0, 0.0, 0.0, 2.0});
        const SmallMatrix diag_b(2, {3.0, 0.0, 0.0, -1.0});
        const double tau = 1.0;
        const struct {
            const char* name;
            const SmallMatrix* a;
            const SmallMatrix* b;
        } pairs[] = {
            {"identity multiple", &rot, &scaled_identity},
            {"diagonal pair", &diag_a, &diag_b},
            {"commuting rotations", &rot, &rot2},
        };
        for (const auto& p : pairs) {
            const double dev = commuting_exponential_check(*p.a, *p.b, tau);
            report.lines.push_back({std::string("deviation, ") + p.name, dev,
                                    "<= 1e-12", dev <= 1e-12});
        }
    } else {
        throw ConfigError("unknown check '" + which +
                          "' (expected commutation, wave, exponential)");
    }

    report.config = std::move(cfg);
    return report;
}

} // namespace splitlab
