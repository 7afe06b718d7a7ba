#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitlab/expectations.hpp"
#include "splitlab/grid.hpp"
#include "splitlab/odebench.hpp"
#include "splitlab/order.hpp"
#include "splitlab/reference.hpp"
#include "splitlab/splitting.hpp"

namespace splitlab {

/// Knobs of one experiment run. Zero/empty members mean "preset default".
struct ExperimentConfig {
    std::string problem;       // fisher | linear-rd | three-op | bench | wave
    std::string scheme;        // seq | strang | sw | weighted(omega)
    std::string integrator;    // euler | midpoint | heun3 | rk4
    std::string sequence;      // comma-separated operator names, first applied first
    int substep_ratio = 0;     // numerical substeps per macro step
    std::vector<double> tau_ladder;
    double horizon = 0.0;
    int grid_cells = 0;
    std::string reaction_flow; // exact | numerical
    std::string out_dir = ".";
    int workers = 0;           // 0 -> hardware concurrency
    std::string snapshot_path; // optional reference-solution CSV export

    std::string echo() const; // one-line effective-config summary
};

/// A concrete semidiscrete problem: grid, initial state, boundary data and
/// the split sub-operators (in declaration order).
struct ProblemSetup {
    std::string name;
    Grid1D grid;
    Field f0;
    DirichletBC bc;
    std::vector<SubProblem> ops;
    std::vector<std::string> op_names;

    std::vector<int> parse_sequence(const std::string& csv_names) const;
};

// fisher | linear-rd | three-op with the given integrator/substep settings.
ProblemSetup make_problem(const std::string& which, int grid_cells,
                          const ButcherTableau& tableau, int substep_ratio,
                          const std::string& reaction_flow);

struct CellResult {
    std::string scheme;
    std::string variant; // strang orientation, "" otherwise
    std::string integrator;
    OrderEstimate estimate;
    const ExpectedCell* expected = nullptr;

    bool gate_passes() const {
        return expected == nullptr || expected->within_band(estimate.order());
    }
};

struct TableResult {
    int id = 0;
    std::string title;
    ExperimentConfig config; // effective values
    std::vector<CellResult> cells;

    bool all_gates_pass() const;
    const CellResult* find(std::string_view scheme, std::string_view integrator,
                           std::string_view variant = "") const;
};

// Reproduces one of the shipped experiment presets (tables 1..5).
TableResult run_table(int id, ExperimentConfig cfg = {});

// Writes <out>/table<N>.csv (ladder rows) and <out>/table<N>_summary.csv.
// Returns the file paths.
std::vector<std::string> write_table_csvs(const TableResult& result,
                                          const std::string& out_dir);

struct FigureSeries {
    std::string family; // seq | sw | ms | single-op | zero-splitting-pair
    std::string label;  // explicit application order
    std::string integrator;
    std::vector<double> taus;
    std::vector<double> errors;
    std::vector<PairRatio> ratios;
};

struct FiguresResult {
    ExperimentConfig config;
    std::vector<FigureSeries> series;

    const FigureSeries* find(std::string_view family, std::string_view label,
                             std::string_view integrator) const;
};

// Order-versus-step-ratio series for the three-operator decomposition:
// all sequential permutations, the six-way symmetric mean, both palindromic
// compositions, a splitting-free single-operator baseline and the
// zero-splitting-error pair.
FiguresResult run_figures(ExperimentConfig cfg = {});

std::vector<std::string> write_figures_csvs(const FiguresResult& result,
                                            const std::string& out_dir);

struct CheckLine {
    std::string name;
    double value = 0.0;
    std::string requirement;
    bool pass = false;
};

struct CheckReport {
    std::string check;
    ExperimentConfig config;
    std::vector<CheckLine> lines;

    bool pass() const;
};

// check in {commutation, wave, exponential}.
CheckReport run_check(const std::string& which, ExperimentConfig cfg = {});

// Runs fn(0..n-1) on a bounded pool; rethrows the first worker exception.
void run_parallel(int n, int workers, const std::function<void(int)>& fn);

} // namespace splitlab
