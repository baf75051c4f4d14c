#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mprtrack/config.hpp"
#include "mprtrack/csv.hpp"
#include "mprtrack/optimizer.hpp"
#include "mprtrack/simulator.hpp"

namespace mprtrack {

struct ValidateReport {
    CsvTable table;
    bool passed = false;
    double max_abs_z = 0.0;
    std::string summary;
};

struct SolveReport {
    CsvTable table;
    PolicySolution vertex_solution;
    PolicySolution optimized_solution;
    std::string summary;
};

inline std::string to_string(SolveMethod method) {
    switch (method) {
        case SolveMethod::VertexEnum: return "vertex-enum";
        case SolveMethod::GridSearch: return "grid-search";
        case SolveMethod::BaselineRandom: return "random";
        case SolveMethod::BaselineGreedy1: return "greedy1";
        case SolveMethod::BaselineGreedy2: return "greedy2";
        case SolveMethod::BaselineTdma: return "tdma";
    }
    throw std::logic_error("unreachable");
}

inline std::string to_string(Certificate certificate) {
    switch (certificate) {
        case Certificate::GlobalByTheorem1: return "global-optimum";
        case Certificate::BestFound: return "best-found";
    }
    throw std::logic_error("unreachable");
}

namespace detail {

inline std::vector<std::string> method_header(const std::string& sweep_column) {
    return {sweep_column, "E_optimized", "E_random",
            "E_greedy1",  "E_greedy2",   "E_tdma"};
}

inline std::vector<std::string> method_row(double sweep_value, const Scenario& s,
                                           const SolverSettings& solver) {
    return {format_cell(sweep_value),
            format_cell(solve_optimized(s, solver.grid_resolution,
                                        solver.refine_rounds).objective_value),
            format_cell(baseline_random(s).objective_value),
            format_cell(baseline_greedy(s, 1).objective_value),
            format_cell(baseline_greedy(s, 2).objective_value),
            format_cell(baseline_tdma(s, solver.tdma_resolution).objective_value)};
}

}  // namespace detail

// One row per (alpha, beta, q); a grid point q = 0 reports the no-update limit.
inline CsvTable run_rte_curves(const ExperimentConfig& cfg) {
    const auto grid = cfg.sweep_grid.empty() ? default_q_grid() : cfg.sweep_grid;
    for (double q : grid) {
        if (q < 0.0 || q > 1.0) {
            throw std::invalid_argument("q grid values must lie in [0, 1]");
        }
    }
    const auto curves = cfg.curves.empty() ? default_curves() : cfg.curves;

    CsvTable table;
    table.header = {"alpha", "beta", "q", "rte"};
    for (const auto& curve : curves) {
        const SourceParams src{curve.alpha, curve.beta, 1.0, 1.0, 1.0};
        validate(src);
        for (double q : grid) {
            const double rte =
                q == 0.0 ? rte_closed_form_limit(src) : rte_closed_form(src, q);
            table.rows.push_back({format_cell(curve.alpha), format_cell(curve.beta),
                                  format_cell(q), format_cell(rte)});
        }
    }
    return table;
}

// Sweeps a symmetric budget gamma_1 = gamma_2 = gamma over the grid.
inline CsvTable run_gamma_sweep(const ExperimentConfig& cfg) {
    const auto grid = cfg.sweep_grid.empty() ? default_gamma_grid() : cfg.sweep_grid;
    for (double gamma : grid) {
        if (gamma <= 0.0 || gamma > 1.0) {
            throw std::invalid_argument("gamma grid values must lie in (0, 1]");
        }
    }

    CsvTable table;
    table.header = detail::method_header("gamma");
    for (double gamma : grid) {
        Scenario s = cfg.scenario;
        s.budget = Budget{gamma, gamma};
        table.rows.push_back(detail::method_row(gamma, s, cfg.solver));
    }
    return table;
}

// Sweeps w_2 over the grid with w_1 = 1 - w_2; scenario weights are replaced.
inline CsvTable run_weight_sweep(const ExperimentConfig& cfg) {
    const auto grid = cfg.sweep_grid.empty() ? default_weight_grid() : cfg.sweep_grid;
    for (double w2 : grid) {
        if (w2 < 0.0 || w2 > 1.0) {
            throw std::invalid_argument("w2 grid values must lie in [0, 1]");
        }
    }

    CsvTable table;
    table.header = detail::method_header("w2");
    for (double w2 : grid) {
        Scenario s = cfg.scenario;
        s.source_1.weight = 1.0 - w2;
        s.source_2.weight = w2;
        table.rows.push_back(detail::method_row(w2, s, cfg.solver));
    }
    return table;
}

namespace detail {

inline PolicySolution solve_policy(const Scenario& s, PolicyName name,
                                   const SolverSettings& solver) {
    switch (name) {
        case PolicyName::Optimized:
            return solve_optimized(s, solver.grid_resolution, solver.refine_rounds);
        case PolicyName::Random: return baseline_random(s);
        case PolicyName::Greedy1: return baseline_greedy(s, 1);
        case PolicyName::Greedy2: return baseline_greedy(s, 2);
        case PolicyName::Tdma: return baseline_tdma(s, solver.tdma_resolution);
    }
    throw std::logic_error("unreachable");
}

inline double z_score(double empirical, double analytical, double std_error) {
    const double diff = empirical - analytical;
    if (std_error > 0.0) return diff / std_error;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Cross-checks closed-form q/RTE/CAE against simulation for each policy.
// Sources with q = 0 under a policy are skipped: their estimate never
// updates, so the stationary closed forms do not apply.
inline ValidateReport run_validate(const ExperimentConfig& cfg) {
    const auto policies = cfg.policies.empty() ? default_policies() : cfg.policies;

    ValidateReport report;
    report.table.header = {"policy", "metric",    "source", "analytical",
                           "empirical", "std_error", "z"};
    report.max_abs_z = 0.0;
    std::string lines;

    for (PolicyName name : policies) {
        const auto sol = detail::solve_policy(cfg.scenario, name, cfg.solver);

        SimConfig sim_cfg;
        sim_cfg.scenario = cfg.scenario;
        if (name == PolicyName::Tdma) {
            sim_cfg.policy = *sol.schedule;
        } else {
            sim_cfg.policy = PolicyPair{sol.policy_1, sol.policy_2};
        }
        sim_cfg.horizon = cfg.sim.horizon;
        sim_cfg.warmup = cfg.sim.warmup;
        sim_cfg.seed = cfg.sim.seed + static_cast<std::uint64_t>(name);
        const auto res = simulate(sim_cfg);

        double policy_max_z = 0.0;
        int rows = 0;
        const auto add_row = [&](const std::string& metric, int source,
                                 double analytical, double empirical,
                                 double std_error) {
            const double z = detail::z_score(empirical, analytical, std_error);
            report.table.rows.push_back(
                {to_string(name), metric, std::to_string(source),
                 format_cell(analytical), format_cell(empirical),
                 format_cell(std_error), format_cell(z)});
            policy_max_z = std::max(policy_max_z, std::abs(z));
            ++rows;
        };

        const SourceParams sources[2] = {cfg.scenario.source_1, cfg.scenario.source_2};
        const double qs[2] = {sol.update_probs.q_1, sol.update_probs.q_2};
        const double emp_q[2] = {res.empirical_q_1, res.empirical_q_2};
        const double se_q[2] = {res.std_err_q_1, res.std_err_q_2};
        const double emp_rte[2] = {res.empirical_rte_1, res.empirical_rte_2};
        const double se_rte[2] = {res.std_err_rte_1, res.std_err_rte_2};
        const double emp_cae[2] = {res.empirical_cae_1, res.empirical_cae_2};
        const double se_cae[2] = {res.std_err_cae_1, res.std_err_cae_2};
        for (int i = 0; i < 2; ++i) {
            if (qs[i] <= 0.0) continue;
            add_row("q", i + 1, qs[i], emp_q[i], se_q[i]);
            add_row("rte", i + 1, rte_closed_form(sources[i], qs[i]), emp_rte[i],
                    se_rte[i]);
            add_row("cae", i + 1, cae_closed_form(sources[i], qs[i]), emp_cae[i],
                    se_cae[i]);
        }

        report.max_abs_z = std::max(report.max_abs_z, policy_max_z);
        lines += to_string(name) + ": " + std::to_string(rows) +
                 " checks, max |z| = " + format_cell(policy_max_z) + "\n";
    }

    report.passed = report.max_abs_z <= 4.0;
    lines += report.passed
                 ? "validation PASSED (all |z| <= 4)\n"
                 : "validation FAILED (max |z| = " + format_cell(report.max_abs_z) + " > 4)\n";
    report.summary = lines;
    return report;
}

// Tabulates all nine vertex candidate pairs and the configured solver's pick.
inline SolveReport run_solve_table(const ExperimentConfig& cfg) {
    SolveReport report;
    report.vertex_solution = solve_vertex_enum(cfg.scenario);
    report.optimized_solution = solve_optimized(cfg.scenario, cfg.solver.grid_resolution,
                                                cfg.solver.refine_rounds);

    std::size_t selected = 0;
    const auto& candidates = report.vertex_solution.candidates;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].objective_value ==
            report.vertex_solution.objective_value) {
            selected = i;
            break;
        }
    }

    report.table.header = {"vertex_1",    "vertex_2",    "a1_silent",
                           "a1_source_1", "a1_source_2", "a2_silent",
                           "a2_source_1", "a2_source_2", "q_1",
                           "q_2",         "objective",   "selected"};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        report.table.rows.push_back(
            {std::to_string(i / 3), std::to_string(i % 3),
             format_cell(c.policy_1.silent), format_cell(c.policy_1.sample_1),
             format_cell(c.policy_1.sample_2), format_cell(c.policy_2.silent),
             format_cell(c.policy_2.sample_1), format_cell(c.policy_2.sample_2),
             format_cell(c.update_probs.q_1), format_cell(c.update_probs.q_2),
             format_cell(c.objective_value), std::to_string(i == selected ? 1 : 0)});
    }

    const auto describe = [](const char* label, const PolicySolution& sol) {
        std::string text = std::string(label) + ": method=" + to_string(sol.method) +
                           " certificate=" + to_string(sol.optimality_certificate) + "\n";
        text += "  policy_1 = (" + format_cell(sol.policy_1.silent) + ", " +
                format_cell(sol.policy_1.sample_1) + ", " +
                format_cell(sol.policy_1.sample_2) + ")\n";
        text += "  policy_2 = (" + format_cell(sol.policy_2.silent) + ", " +
                format_cell(sol.policy_2.sample_1) + ", " +
                format_cell(sol.policy_2.sample_2) + ")\n";
        text += "  q = (" + format_cell(sol.update_probs.q_1) + ", " +
                format_cell(sol.update_probs.q_2) + ")\n";
        text += "  objective = " + format_cell(sol.objective_value) + "\n";
        return text;
    };
    report.summary = describe("vertex enumeration", report.vertex_solution) +
                     describe("optimized", report.optimized_solution);
    return report;
}

}  // namespace mprtrack
