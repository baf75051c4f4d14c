#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "mprtrack/mprtrack.hpp"

namespace {

using namespace mprtrack;

double cell(const CsvTable& table, std::size_t row, std::size_t col) {
    return std::strtod(table.rows.at(row).at(col).c_str(), nullptr);
}

TEST(FormatCell, TwelveSignificantDigits) {
    EXPECT_EQ(format_cell(2.0 / 7.0), "0.285714285714");
    EXPECT_EQ(format_cell(0.5), "0.5");
    EXPECT_EQ(format_cell(0.0), "0");
    EXPECT_EQ(format_cell(1e-9), "1e-09");
    EXPECT_EQ(format_cell(123456789012345.0), "1.23456789012e+14");
}

TEST(ToCsv, JoinsWithCommaAndNewline) {
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{"1", "2"}, {"3", "4"}};
    EXPECT_EQ(to_csv(t), "a,b\n1,2\n3,4\n");

    t.rows.push_back({"only one"});
    EXPECT_THROW(to_csv(t), std::invalid_argument);
}

TEST(ParseConfig, EmptyObjectYieldsDefaults) {
    const auto cfg = parse_config("{}");
    EXPECT_FALSE(cfg.experiment.has_value());
    EXPECT_DOUBLE_EQ(cfg.scenario.source_1.alpha, 0.8);
    EXPECT_DOUBLE_EQ(cfg.scenario.source_1.beta, 0.6);
    EXPECT_DOUBLE_EQ(cfg.scenario.source_2.alpha, 0.3);
    EXPECT_DOUBLE_EQ(cfg.scenario.source_2.beta, 0.2);
    EXPECT_DOUBLE_EQ(cfg.scenario.source_1.weight, 0.5);
    EXPECT_DOUBLE_EQ(cfg.scenario.channel.p_solo_1, 0.9);
    EXPECT_DOUBLE_EQ(cfg.scenario.channel.p_solo_2, 0.85);
    EXPECT_DOUBLE_EQ(cfg.scenario.channel.p_joint_1, 0.6);
    EXPECT_DOUBLE_EQ(cfg.scenario.channel.p_joint_2, 0.55);
    EXPECT_DOUBLE_EQ(cfg.scenario.budget.gamma_1, 0.5);
    EXPECT_EQ(cfg.scenario.objective_kind, ObjectiveKind::Rte);
    EXPECT_TRUE(cfg.sweep_grid.empty());
    EXPECT_TRUE(cfg.curves.empty());
    EXPECT_TRUE(cfg.policies.empty());
    EXPECT_EQ(cfg.solver.grid_resolution, 101);
    EXPECT_EQ(cfg.solver.refine_rounds, 3);
    EXPECT_EQ(cfg.solver.tdma_resolution, 101);
    EXPECT_EQ(cfg.sim.horizon, 1'000'000u);
    EXPECT_EQ(cfg.sim.warmup, 10'000u);
    EXPECT_EQ(cfg.sim.seed, 1u);
}

TEST(ParseConfig, PartialOverridesKeepRemainingDefaults) {
    const auto cfg = parse_config(R"({
        "experiment": "gamma-sweep",
        "scenario": {"source_1": {"alpha": 0.75}, "budget": {"gamma_1": 0.25}},
        "solver": {"grid_resolution": 11},
        "sim": {"seed": 99}
    })");
    ASSERT_TRUE(cfg.experiment.has_value());
    EXPECT_EQ(*cfg.experiment, ExperimentKind::GammaSweep);
    EXPECT_DOUBLE_EQ(cfg.scenario.source_1.alpha, 0.75);
    EXPECT_DOUBLE_EQ(cfg.scenario.source_1.beta, 0.6);
    EXPECT_DOUBLE_EQ(cfg.scenario.budget.gamma_1, 0.25);
    EXPECT_DOUBLE_EQ(cfg.scenario.budget.gamma_2, 0.5);
    EXPECT_EQ(cfg.solver.grid_resolution, 11);
    EXPECT_EQ(cfg.solver.refine_rounds, 3);
    EXPECT_EQ(cfg.sim.seed, 99u);
    EXPECT_EQ(cfg.sim.horizon, 1'000'000u);
}

TEST(ParseConfig, ParsesGridsPoliciesCurvesAndObjective) {
    const auto cfg = parse_config(R"({
        "scenario": {"objective": "cae"},
        "sweep_grid": [0.1, 0.2, 0.9],
        "curves": [{"alpha": 0.4, "beta": 0.3}],
        "policies": ["tdma", "optimized"]
    })");
    EXPECT_EQ(cfg.scenario.objective_kind, ObjectiveKind::Cae);
    ASSERT_EQ(cfg.sweep_grid.size(), 3u);
    EXPECT_DOUBLE_EQ(cfg.sweep_grid[1], 0.2);
    ASSERT_EQ(cfg.curves.size(), 1u);
    EXPECT_DOUBLE_EQ(cfg.curves[0].alpha, 0.4);
    ASSERT_EQ(cfg.policies.size(), 2u);
    EXPECT_EQ(cfg.policies[0], PolicyName::Tdma);
    EXPECT_EQ(cfg.policies[1], PolicyName::Optimized);
}

TEST(ParseConfig, RejectsMalformedInput) {
    EXPECT_THROW(parse_config("not json"), ConfigError);
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
    EXPECT_THROW(parse_config(R"({"horizon": 5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"scenario": {"alpha": 0.5}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"scenario": {"source_1": {"alfa": 0.5}}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"experiment": "bogus"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"policies": ["greedy3"]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"scenario": {"objective": "age"}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"sweep_grid": []})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"sweep_grid": [0.2, 0.2]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"sweep_grid": [0.2, "x"]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"solver": {"grid_resolution": 1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"solver": {"refine_rounds": -1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"sim": {"seed": -4}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"scenario": {"source_1": {"alpha": 1.5}}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"scenario": {"channel": {"p_joint_1": 0.95}}})"), ConfigError);
}

TEST(LoadConfig, ReadsFileAndReportsMissingPath) {
    const auto path = std::string("/tmp/mprtrack_cfg_test.json");
    std::ofstream(path) << R"({"sim": {"seed": 7}})";
    EXPECT_EQ(load_config(path).sim.seed, 7u);
    EXPECT_THROW(load_config("/tmp/does_not_exist_mprtrack.json"), ConfigError);
}

TEST(RunRteCurves, DefaultGridAndCurves) {
    ExperimentConfig cfg;
    const auto table = run_rte_curves(cfg);
    const std::vector<std::string> header{"alpha", "beta", "q", "rte"};
    EXPECT_EQ(table.header, header);
    ASSERT_EQ(table.rows.size(), 5u * 101u);

    // Second curve (0.3, 0.2): its q = 0 row carries the no-update limit.
    EXPECT_EQ(table.rows[101][0], "0.3");
    EXPECT_EQ(table.rows[101][2], "0");
    EXPECT_EQ(table.rows[101][3], "0.48");
    // Fourth curve (0.8, 0.6) at q = 0.5.
    EXPECT_EQ(table.rows[3 * 101 + 50][3], "0.285714285714");
    // Third curve (0.5, 0.5) at q = 1.
    EXPECT_EQ(table.rows[2 * 101 + 100][3], "0");
}

TEST(RunRteCurves, CustomGridAndRangeChecks) {
    ExperimentConfig cfg;
    cfg.curves = {{0.8, 0.6}};
    cfg.sweep_grid = {0.5, 1.0};
    const auto table = run_rte_curves(cfg);
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_NEAR(cell(table, 0, 3), 2.0 / 7.0, 1e-12);

    cfg.sweep_grid = {-0.1, 0.5};
    EXPECT_THROW(run_rte_curves(cfg), std::invalid_argument);
    cfg.sweep_grid = {0.5, 1.1};
    EXPECT_THROW(run_rte_curves(cfg), std::invalid_argument);
    cfg.sweep_grid = {0.5};
    cfg.curves = {{1.2, 0.6}};
    EXPECT_THROW(run_rte_curves(cfg), std::invalid_argument);
}

TEST(RunGammaSweep, ColumnsAndDominanceOverMprBaselines) {
    ExperimentConfig cfg;
    cfg.sweep_grid = {0.2, 0.5, 0.9};
    cfg.solver = SolverSettings{41, 1, 41};
    const auto table = run_gamma_sweep(cfg);
    const std::vector<std::string> header{"gamma",     "E_optimized", "E_random",
                                          "E_greedy1", "E_greedy2",   "E_tdma"};
    EXPECT_EQ(table.header, header);
    ASSERT_EQ(table.rows.size(), 3u);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double opt = cell(table, r, 1);
        EXPECT_LE(opt, cell(table, r, 2) + 1e-12);
        EXPECT_LE(opt, cell(table, r, 3) + 1e-12);
        EXPECT_LE(opt, cell(table, r, 4) + 1e-12);
        for (std::size_t c = 1; c < 6; ++c) {
            EXPECT_GT(cell(table, r, c), 0.0);
        }
    }

    cfg.sweep_grid = {0.0, 0.5};
    EXPECT_THROW(run_gamma_sweep(cfg), std::invalid_argument);
    cfg.sweep_grid = {0.5, 1.5};
    EXPECT_THROW(run_gamma_sweep(cfg), std::invalid_argument);
}

TEST(RunGammaSweep, DenserGridReproducesSharedPoints) {
    ExperimentConfig cfg;
    cfg.solver = SolverSettings{21, 0, 21};
    cfg.sweep_grid = {0.4};
    const auto coarse = run_gamma_sweep(cfg);
    cfg.sweep_grid = {0.2, 0.4, 0.6};
    const auto dense = run_gamma_sweep(cfg);
    EXPECT_EQ(coarse.rows[0], dense.rows[1]);
}

TEST(RunWeightSweep, EndpointsMatchGreedyBaselines) {
    ExperimentConfig cfg;
    cfg.sweep_grid = {0.0, 0.5, 1.0};
    cfg.solver = SolverSettings{41, 1, 41};
    const auto table = run_weight_sweep(cfg);
    EXPECT_EQ(table.header.front(), "w2");
    ASSERT_EQ(table.rows.size(), 3u);
    // w2 = 0: only source 1 counts, so committing everything to it is optimal.
    EXPECT_NEAR(cell(table, 0, 1), cell(table, 0, 3), 1e-12);
    // w2 = 1: the optimum coincides with greedy on source 2.
    EXPECT_NEAR(cell(table, 2, 1), cell(table, 2, 4), 1e-12);
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_LE(cell(table, r, 1), cell(table, r, 2) + 1e-12);
        EXPECT_LE(cell(table, r, 1), cell(table, r, 3) + 1e-12);
        EXPECT_LE(cell(table, r, 1), cell(table, r, 4) + 1e-12);
    }

    cfg.sweep_grid = {-0.2, 0.5};
    EXPECT_THROW(run_weight_sweep(cfg), std::invalid_argument);
}

TEST(RunValidate, AgreesWithSimulationAndSkipsSilentSources) {
    ExperimentConfig cfg;
    cfg.policies = {PolicyName::Greedy1};
    cfg.sim = SimSettings{200'000, 5'000, 1};
    const auto report = run_validate(cfg);
    const std::vector<std::string> header{"policy",    "metric",    "source",
                                          "analytical", "empirical", "std_error",
                                          "z"};
    EXPECT_EQ(report.table.header, header);
    // Greedy source 1 leaves q_2 = 0, so only source 1 rows appear.
    ASSERT_EQ(report.table.rows.size(), 3u);
    for (const auto& row : report.table.rows) {
        EXPECT_EQ(row[0], "greedy1");
        EXPECT_EQ(row[2], "1");
    }
    EXPECT_EQ(report.table.rows[0][1], "q");
    EXPECT_EQ(report.table.rows[1][1], "rte");
    EXPECT_EQ(report.table.rows[2][1], "cae");
    EXPECT_TRUE(report.passed);
    EXPECT_LE(report.max_abs_z, 4.0);
    EXPECT_NE(report.summary.find("PASSED"), std::string::npos);
    EXPECT_NEAR(cell(report.table, 0, 3), 0.6425, 1e-12);
}

TEST(RunValidate, CoversAllPoliciesByDefault) {
    ExperimentConfig cfg;
    cfg.sim = SimSettings{120'000, 2'000, 3};
    cfg.solver = SolverSettings{41, 1, 41};
    const auto report = run_validate(cfg);
    // optimized, random, tdma have both sources active; the greedies one each.
    EXPECT_EQ(report.table.rows.size(), 6u + 6u + 3u + 3u + 6u);
    EXPECT_TRUE(report.passed);
    EXPECT_NE(report.summary.find("optimized"), std::string::npos);
    EXPECT_NE(report.summary.find("tdma"), std::string::npos);
}

TEST(RunValidate, DeterministicForFixedSeed) {
    ExperimentConfig cfg;
    cfg.policies = {PolicyName::Random};
    cfg.sim = SimSettings{80'000, 1'000, 11};
    const auto a = run_validate(cfg);
    const auto b = run_validate(cfg);
    EXPECT_EQ(to_csv(a.table), to_csv(b.table));
    cfg.sim.seed = 12;
    const auto c = run_validate(cfg);
    EXPECT_NE(to_csv(a.table), to_csv(c.table));
}

TEST(RunSolveTable, ListsNineCandidatesAndMarksSelection) {
    ExperimentConfig cfg;
    const auto report = run_solve_table(cfg);
    ASSERT_EQ(report.table.rows.size(), 9u);
    int selected_count = 0;
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(report.table.rows[i][0], std::to_string(i / 3));
        EXPECT_EQ(report.table.rows[i][1], std::to_string(i % 3));
        selected_count += report.table.rows[i][11] == "1" ? 1 : 0;
    }
    EXPECT_EQ(selected_count, 1);
    // Default scenario: cross assignment (sensor 1 -> source 2, sensor 2 ->
    // source 1) wins the vertex table.
    EXPECT_EQ(report.table.rows[7][11], "1");
    EXPECT_NEAR(cell(report.table, 7, 10),
                report.vertex_solution.objective_value, 1e-12);
    EXPECT_NE(report.summary.find("vertex enumeration"), std::string::npos);
    EXPECT_NE(report.summary.find("optimized"), std::string::npos);
    EXPECT_LE(report.optimized_solution.objective_value,
              report.vertex_solution.objective_value + 1e-12);
}

}  // namespace
