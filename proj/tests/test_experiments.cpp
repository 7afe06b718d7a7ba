#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitlab/errors.hpp"
#include "splitlab/expectations.hpp"
#include "splitlab/experiments.hpp"

using namespace splitlab;

namespace {

std::string data_rows(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::string line, out;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') continue; // config echo differs
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace

TEST_CASE("problem presets") {
    ProblemSetup fisher = make_problem("fisher", 30, ButcherTableau::rk4(), 1,
                                       "numerical");
    CHECK(fisher.ops.size() == 2);
    CHECK(fisher.f0.values.front() == 1.0);
    CHECK(fisher.op_names[1] == "logistic");

    ProblemSetup linear = make_problem("linear-rd", 30, ButcherTableau::rk4(), 1,
                                       "exact");
    CHECK(linear.f0.values.front() == 0.0);
    CHECK(linear.ops[1].flow_mode == FlowMode::exact);

    ProblemSetup three = make_problem("three-op", 30, ButcherTableau::rk4(), 1,
                                      "exact");
    CHECK(three.ops.size() == 3);
    CHECK(three.op_names == std::vector<std::string>{"diffusion", "linear", "quadratic"});

    CHECK_THROWS_AS(make_problem("kuramoto", 30, ButcherTableau::rk4(), 1, ""),
                    ConfigError);
    CHECK_THROWS_AS(make_problem("fisher", 30, ButcherTableau::rk4(), 1, "magic"),
                    ConfigError);
}

TEST_CASE("sequence parsing by operator name") {
    ProblemSetup three = make_problem("three-op", 30, ButcherTableau::rk4(), 1,
                                      "exact");
    const auto seq = three.parse_sequence("quadratic,linear,diffusion");
    CHECK(seq == std::vector<int>{2, 1, 0});
    CHECK_THROWS_AS(three.parse_sequence("diffusion,advection"), ConfigError);
}

TEST_CASE("config echo lists the effective knobs") {
    ExperimentConfig cfg;
    cfg.problem = "fisher";
    cfg.scheme = "seq";
    cfg.integrator = "rk4";
    cfg.substep_ratio = 10;
    cfg.tau_ladder = {0.1, 0.05};
    cfg.horizon = 1.0;
    cfg.grid_cells = 30;
    cfg.reaction_flow = "numerical";
    const std::string echo = cfg.echo();
    CHECK(echo.find("schema=1") == 0);
    CHECK(echo.find("problem=fisher") != std::string::npos);
    CHECK(echo.find("tau-ladder=0.1,0.05") != std::string::npos);
    CHECK(echo.find("substep-ratio=10") != std::string::npos);
}

TEST_CASE("published expectations cover every cell") {
    for (int id = 1; id <= 5; ++id) {
        const TableExpectations& t = published_table(id);
        CHECK(t.cells.size() == 12);
        for (const char* scheme : {"seq", "sw", "ms"})
            for (const char* integ : {"euler", "midpoint", "heun3", "rk4"})
                CHECK(t.find(scheme, integ) != nullptr);
    }
    CHECK_THROWS_AS(published_table(6), ConfigError);

    // band logic
    const ExpectedCell* cell = published_table(3).find("seq", "rk4");
    REQUIRE(cell != nullptr);
    CHECK(cell->published == 1.08);
    CHECK(cell->within_band(1.1));
    CHECK_FALSE(cell->within_band(1.5));
}

TEST_CASE("run_parallel covers every index once and rethrows") {
    std::vector<std::atomic<int>> hits(64);
    run_parallel(64, 8, [&](int i) { hits[static_cast<size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);

    CHECK_THROWS_AS(run_parallel(8, 4,
                                 [](int i) {
                                     if (i == 5) throw ConfigError("boom");
                                 }),
                    ConfigError);
}

TEST_CASE("table 5 run is deterministic across worker counts") {
    ExperimentConfig one;
    one.workers = 1;
    one.out_dir = "test_out/w1";
    ExperimentConfig four;
    four.workers = 4;
    four.out_dir = "test_out/w4";

    const TableResult a = run_table(5, one);
    const TableResult b = run_table(5, four);
    REQUIRE(a.cells.size() == b.cells.size());
    for (size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].scheme == b.cells[i].scheme);
        CHECK(a.cells[i].integrator == b.cells[i].integrator);
        CHECK(a.cells[i].estimate.order() == b.cells[i].estimate.order());
        for (size_t p = 0; p < a.cells[i].estimate.points.size(); ++p)
            CHECK(a.cells[i].estimate.points[p].error ==
                  b.cells[i].estimate.points[p].error);
    }

    const auto pa = write_table_csvs(a, one.out_dir);
    const auto pb = write_table_csvs(b, four.out_dir);
    REQUIRE(pa.size() == pb.size());
    for (size_t i = 0; i < pa.size(); ++i)
        CHECK(data_rows(pa[i]) == data_rows(pb[i]));

    std::filesystem::remove_all("test_out");
}

TEST_CASE("table csvs carry the config header and schema") {
    ExperimentConfig cfg;
    cfg.workers = 2;
    cfg.out_dir = "test_out/hdr";
    const TableResult t = run_table(5, cfg);
    const auto paths = write_table_csvs(t, cfg.out_dir);
    for (const auto& p : paths) {
        std::ifstream is(p);
        std::string first;
        std::getline(is, first);
        CHECK(first.rfind("# splitlab table5", 0) == 0);
        CHECK(first.find("schema=1") != std::string::npos);
        CHECK(first.find("problem=linear-rd") != std::string::npos);
    }
    std::filesystem::remove_all("test_out");
}

TEST_CASE("three-operator figure series land on the expected orders") {
    ExperimentConfig cfg;
    cfg.workers = 4;
    const FiguresResult result = run_figures(cfg);

    auto mean_rho = [](const FigureSeries& s) {
        double sum = 0.0;
        int n = 0;
        for (const PairRatio& pr : s.ratios)
            if (pr.valid) { sum += pr.rho; ++n; }
        REQUIRE(n > 0);
        return sum / n;
    };

    int seq_series = 0;
    for (const FigureSeries& s : result.series) {
        if (s.family != "seq") continue;
        ++seq_series;
        CHECK(std::abs(mean_rho(s) - 1.0) <= 0.25);
    }
    CHECK(seq_series == 12); // six application orders, two integrators

    // both palindromic compositions run at second order with heun3 and rk4
    for (const char* integ : {"heun3", "rk4"}) {
        for (const char* label : {"quadratic>linear>diffusion",
                                  "linear>quadratic>diffusion"}) {
            const FigureSeries* s = result.find("ms", label, integ);
            REQUIRE(s != nullptr);
            CHECK(std::abs(mean_rho(*s) - 2.0) <= 0.25);
        }
        const FigureSeries* sw = result.find("sw", "mean-of-6-orders", integ);
        REQUIRE(sw != nullptr);
        CHECK(std::abs(mean_rho(*sw) - 2.0) <= 0.3);

        // with no splitting present the series shows the integrator's order,
        // and the diffusion/linear pair has no splitting error either
        const double own = integ == std::string("rk4") ? 4.0 : 3.0;
        const FigureSeries* single = result.find("single-op", "diffusion-only", integ);
        REQUIRE(single != nullptr);
        CHECK(std::abs(mean_rho(*single) - own) <= 0.3);
        const FigureSeries* pair =
            result.find("zero-splitting-pair", "diffusion>linear", integ);
        REQUIRE(pair != nullptr);
        CHECK(std::abs(mean_rho(*pair) - own) <= 0.3);
    }
}

TEST_CASE("commutation check passes and reports the expected shape") {
    const CheckReport report = run_check("commutation", {});
    CHECK(report.pass());
    REQUIRE(report.lines.size() == 3);
    CHECK(report.lines[0].value == 0.0);  // linear residual is exactly zero
    CHECK(report.lines[1].value > 0.1);   // logistic residual clearly nonzero
}

TEST_CASE("exponential check passes") {
    const CheckReport report = run_check("exponential", {});
    CHECK(report.pass());
    for (const CheckLine& l : report.lines) CHECK(l.value <= 1e-12);
}

TEST_CASE("unknown checks are configuration errors") {
    CHECK_THROWS_AS(run_check("entropy", {}), ConfigError);
}
