// Solvers for the budget-constrained weighted-error minimization: exact
// nine-vertex enumeration (globally optimal when both correlation parameters
// are nonpositive), a general grid search with local refinement, and the
// random, greedy, and TDMA baseline policies.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mprtrack/access.hpp"
#include "mprtrack/source.hpp"

namespace mprtrack {

enum class ObjectiveKind { Rte, Cae };

// One optimization instance: two sources, the shared channel, per-sensor
// budgets, and which objective (reconstruction error or actuation cost) the
// weighted sum combines.
struct Scenario {
    SourceParams source_1;
    SourceParams source_2;
    MprChannel channel;
    Budget budget;
    ObjectiveKind objective_kind = ObjectiveKind::Rte;
};

inline void validate(const Scenario& s) {
    validate(s.source_1);
    validate(s.source_2);
    validate(s.channel);
    validate(s.budget);
}

enum class SolveMethod {
    VertexEnum,
    GridSearch,
    BaselineRandom,
    BaselineGreedy1,
    BaselineGreedy2,
    BaselineTdma,
};

enum class Certificate {
    GlobalByTheorem1,  // vertex enumeration with both lambda_i <= 0
    BestFound,
};

// Objective value of one enumerated vertex pair.
struct CandidateRecord {
    SamplingPolicy policy_1;
    SamplingPolicy policy_2;
    UpdateProbs update_probs;
    double objective_value = 0.0;
};

struct PolicySolution {
    SamplingPolicy policy_1;
    SamplingPolicy policy_2;
    UpdateProbs update_probs;
    double objective_value = 0.0;
    SolveMethod method = SolveMethod::VertexEnum;
    Certificate optimality_certificate = Certificate::BestFound;
    // Set for TDMA solutions; the policies above are its per-slot marginals.
    std::optional<TdmaSchedule> schedule;
    // Full nine-candidate table, set by vertex enumeration.
    std::vector<CandidateRecord> candidates;
};

namespace detail {

// Closed-form error curve with precomputed coefficients,
// E(q) = num * (1-q) / (dc - ds*q), valid on q in [0, 1]: evaluating at
// q = 0 yields the limiting value of the non-irreducible endpoint.
struct RteCurve {
    double num;  // 2 alpha beta / (alpha + beta)
    double dc;   // alpha + beta
    double ds;   // alpha + beta - 1

    explicit RteCurve(const SourceParams& src)
        : num(2.0 * src.alpha * src.beta / (src.alpha + src.beta)),
          dc(src.alpha + src.beta),
          ds(src.alpha + src.beta - 1.0) {}

    double operator()(double q) const { return num * (1.0 - q) / (dc - ds * q); }
};

// Weighted objective evaluator shared by every solver, so that identical
// policies produce bitwise-identical objective values across methods. For a
// cost objective the weights are the transformed ones, making the weighted
// error sum equal the weighted cost sum.
struct ObjectiveEval {
    RteCurve e1;
    RteCurve e2;
    double w1;
    double w2;

    explicit ObjectiveEval(const Scenario& s) : e1(s.source_1), e2(s.source_2) {
        validate(s);
        if (s.objective_kind == ObjectiveKind::Cae) {
            w1 = cae_weight_transform(s.source_1);
            w2 = cae_weight_transform(s.source_2);
        } else {
            w1 = s.source_1.weight;
            w2 = s.source_2.weight;
        }
    }

    double operator()(double q_1, double q_2) const {
        return w1 * e1(q_1) + w2 * e2(q_2);
    }
    double operator()(const UpdateProbs& q) const { return (*this)(q.q_1, q.q_2); }
};

inline SamplingPolicy make_policy(double sample_1, double sample_2) {
    return SamplingPolicy{std::max(0.0, 1.0 - sample_1 - sample_2), sample_1,
                          sample_2};
}

// Grid coordinates with exact endpoints.
inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = lo + step * i;
    }
    v.front() = lo;
    v.back() = hi;
    return v;
}

}  // namespace detail

// Extreme points of one sensor's feasible policy set under budget gamma:
// stay silent, spend the whole budget on source 1, or on source 2.
inline std::vector<SamplingPolicy> vertex_set(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw std::domain_error("budget must lie in (0, 1]");
    }
    return {SamplingPolicy{1.0, 0.0, 0.0}, SamplingPolicy{1.0 - gamma, gamma, 0.0},
            SamplingPolicy{1.0 - gamma, 0.0, gamma}};
}

// Evaluates the weighted objective at all nine vertex pairs and returns the
// minimizer (ties broken by enumeration order). The result is globally
// optimal when both sources have lambda <= 0; otherwise it is only the best
// vertex pair.
inline PolicySolution solve_vertex_enum(const Scenario& s) {
    const detail::ObjectiveEval eval(s);
    const auto v1 = vertex_set(s.budget.gamma_1);
    const auto v2 = vertex_set(s.budget.gamma_2);

    PolicySolution out;
    out.method = SolveMethod::VertexEnum;
    out.optimality_certificate = (s.source_1.lambda() <= 0.0 && s.source_2.lambda() <= 0.0)
                          ? Certificate::GlobalByTheorem1
                          : Certificate::BestFound;
    out.candidates.reserve(9);
    std::size_t best = 0;
    for (const auto& a1 : v1) {
        for (const auto& a2 : v2) {
            const UpdateProbs q = effective_update_probs(a1, a2, s.channel);
            const double obj = eval(q);
            out.candidates.push_back(CandidateRecord{a1, a2, q, obj});
            if (out.candidates[best].objective_value > obj) {
                best = out.candidates.size() - 1;
            }
        }
    }
    const CandidateRecord& c = out.candidates[best];
    out.policy_1 = c.policy_1;
    out.policy_2 = c.policy_2;
    out.update_probs = c.update_probs;
    out.objective_value = c.objective_value;
    return out;
}

namespace detail {

// Triangular grid {(x, y): x, y >= 0, x + y <= gamma} with `resolution`
// points per axis, stored as parallel coordinate arrays.
struct TriangleGrid {
    std::vector<double> x;
    std::vector<double> y;

    TriangleGrid(double gamma, int resolution) {
        const auto axis = linspace(0.0, gamma, resolution);
        for (double yv : axis) {
            for (double xv : axis) {
                if (xv + yv <= gamma + kFeasibilityTol) {
                    x.push_back(xv);
                    y.push_back(yv);
                }
            }
        }
    }

    // Box [cx-h, cx+h] x [cy-h, cy+h] clipped to the triangle.
    TriangleGrid(double gamma, int resolution, double cx, double cy, double h) {
        const auto ax = linspace(std::max(0.0, cx - h), std::min(gamma, cx + h),
                                 resolution);
        const auto ay = linspace(std::max(0.0, cy - h), std::min(gamma, cy + h),
                                 resolution);
        for (double yv : ay) {
            for (double xv : ax) {
                if (xv + yv <= gamma + kFeasibilityTol) {
                    x.push_back(xv);
                    y.push_back(yv);
                }
            }
        }
    }

    std::size_t size() const { return x.size(); }
};

// Best response of one sensor over its grid while the other sensor's policy
// is fixed. `self_is_1` selects which sensor the grid describes. Updates
// (best_obj, best_x, best_y) only on strict improvement, scanning in index
// order, so results are deterministic.
inline void scan_block(const TriangleGrid& grid, double other_x, double other_y,
                       bool self_is_1, const MprChannel& ch,
                       const ObjectiveEval& eval, double& best_obj,
                       double& best_x, double& best_y) {
    // q_i is affine in the scanned sensor's (x, y) for a fixed other policy.
    const double other_silent = 1.0 - other_x - other_y;
    const double both = 1.0 - (1.0 - ch.p_joint_1) * (1.0 - ch.p_joint_2);
    double q1_c, q1_x, q1_y, q2_c, q2_x, q2_y;
    if (self_is_1) {
        q1_c = other_x * ch.p_solo_2;
        q1_x = other_silent * ch.p_solo_1 + other_x * both + other_y * ch.p_joint_1 -
               other_x * ch.p_solo_2;
        q1_y = other_x * (ch.p_joint_2 - ch.p_solo_2);
        q2_c = other_y * ch.p_solo_2;
        q2_y = other_silent * ch.p_solo_1 + other_y * both + other_x * ch.p_joint_1 -
               other_y * ch.p_solo_2;
        q2_x = other_y * (ch.p_joint_2 - ch.p_solo_2);
    } else {
        q1_c = other_x * ch.p_solo_1;
        q1_x = other_silent * ch.p_solo_2 + other_x * both + other_y * ch.p_joint_2 -
               other_x * ch.p_solo_1;
        q1_y = other_x * (ch.p_joint_1 - ch.p_solo_1);
        q2_c = other_y * ch.p_solo_1;
        q2_y = other_silent * ch.p_solo_2 + other_y * both + other_x * ch.p_joint_2 -
               other_y * ch.p_solo_1;
        q2_x = other_y * (ch.p_joint_1 - ch.p_solo_1);
    }
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x[i];
        const double y = grid.y[i];
        const double q1 = std::clamp(q1_c + q1_x * x + q1_y * y, 0.0, 1.0);
        const double q2 = std::clamp(q2_c + q2_x * x + q2_y * y, 0.0, 1.0);
        const double obj = eval(q1, q2);
        if (obj < best_obj) {
            best_obj = obj;
            best_x = x;
            best_y = y;
        }
    }
}

}  // namespace detail

// Exhaustive search over the product of triangular policy grids (`resolution`
// points per axis), followed by `refine_rounds` rounds of alternating
// per-sensor refinement: each round re-grids a box around the incumbent whose
// half-width shrinks by a factor 0.25 per round. Never certifies optimality.
inline PolicySolution solve_grid(const Scenario& s, int resolution,
                                 int refine_rounds) {
    if (resolution < 2) {
        throw std::invalid_argument("grid resolution must be at least 2");
    }
    if (refine_rounds < 0) {
        throw std::invalid_argument("refine rounds must be nonnegative");
    }
    const detail::ObjectiveEval eval(s);
    const detail::TriangleGrid g1(s.budget.gamma_1, resolution);
    const detail::TriangleGrid g2(s.budget.gamma_2, resolution);

    // Base pass: for each sensor-2 point, scan all sensor-1 points using the
    // affine representation of (q1, q2) in sensor 1's coordinates.
    double best_obj = std::numeric_limits<double>::infinity();
    double b1x = 0.0, b1y = 0.0, b2x = 0.0, b2y = 0.0;
    for (std::size_t j = 0; j < g2.size(); ++j) {
        double row_obj = best_obj;
        double row_x = b1x, row_y = b1y;
        detail::scan_block(g1, g2.x[j], g2.y[j], true, s.channel, eval, row_obj,
                           row_x, row_y);
        if (row_obj < best_obj) {
            best_obj = row_obj;
            b1x = row_x;
            b1y = row_y;
            b2x = g2.x[j];
            b2y = g2.y[j];
        }
    }

    for (int r = 1; r <= refine_rounds; ++r) {
        const double shrink = std::pow(0.25, r);
        const detail::TriangleGrid l1(s.budget.gamma_1, resolution, b1x, b1y,
                                      s.budget.gamma_1 * shrink);
        detail::scan_block(l1, b2x, b2y, true, s.channel, eval, best_obj, b1x, b1y);
        const detail::TriangleGrid l2(s.budget.gamma_2, resolution, b2x, b2y,
                                      s.budget.gamma_2 * shrink);
        detail::scan_block(l2, b1x, b1y, false, s.channel, eval, best_obj, b2x,
                           b2y);
    }

    PolicySolution out;
    out.method = SolveMethod::GridSearch;
    out.optimality_certificate = Certificate::BestFound;
    out.policy_1 = detail::make_policy(b1x, b1y);
    out.policy_2 = detail::make_policy(b2x, b2y);
    out.update_probs = effective_update_probs(out.policy_1, out.policy_2, s.channel);
    out.objective_value = eval(out.update_probs);
    return out;
}

// Each sensor splits its budget evenly between the two sources.
inline PolicySolution baseline_random(const Scenario& s) {
    const detail::ObjectiveEval eval(s);
    PolicySolution out;
    out.method = SolveMethod::BaselineRandom;
    out.optimality_certificate = Certificate::BestFound;
    out.policy_1 = detail::make_policy(s.budget.gamma_1 / 2.0, s.budget.gamma_1 / 2.0);
    out.policy_2 = detail::make_policy(s.budget.gamma_2 / 2.0, s.budget.gamma_2 / 2.0);
    out.update_probs = effective_update_probs(out.policy_1, out.policy_2, s.channel);
    out.objective_value = eval(out.update_probs);
    return out;
}

// Both sensors spend their entire budget on the target source. The other
// source is never updated; its error contribution is the q -> 0 limit.
inline PolicySolution baseline_greedy(const Scenario& s, int target) {
    if (target != 1 && target != 2) {
        throw std::invalid_argument("greedy target must be source 1 or 2");
    }
    const detail::ObjectiveEval eval(s);
    PolicySolution out;
    out.method =
        target == 1 ? SolveMethod::BaselineGreedy1 : SolveMethod::BaselineGreedy2;
    out.optimality_certificate = Certificate::BestFound;
    out.policy_1 = target == 1 ? detail::make_policy(s.budget.gamma_1, 0.0)
                               : detail::make_policy(0.0, s.budget.gamma_1);
    out.policy_2 = target == 1 ? detail::make_policy(s.budget.gamma_2, 0.0)
                               : detail::make_policy(0.0, s.budget.gamma_2);
    out.update_probs = effective_update_probs(out.policy_1, out.policy_2, s.channel);
    out.objective_value = eval(out.update_probs);
    return out;
}

// Best TDMA schedule by exhaustive search over a fixed lattice of time
// fractions. The lattice spans [0, 1] per axis regardless of the budgets and
// infeasible tuples are skipped, so the feasible sets (and hence the optimum)
// are monotone in the budgets by construction.
inline PolicySolution baseline_tdma(const Scenario& s, int resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("grid resolution must be at least 2");
    }
    const detail::ObjectiveEval eval(s);
    const auto axis = detail::linspace(0.0, 1.0, resolution);
    const double g1 = s.budget.gamma_1;
    const double g2 = s.budget.gamma_2;
    const double p1 = s.channel.p_solo_1;
    const double p2 = s.channel.p_solo_2;

    double best_obj = std::numeric_limits<double>::infinity();
    TdmaSchedule best{};
    for (double t11 : axis) {
        if (t11 > g1 + kFeasibilityTol) break;
        for (double t12 : axis) {
            if (t11 + t12 > g1 + kFeasibilityTol) break;
            const double q1_a = t11 * p1;
            const double q2_a = t12 * p1;
            const double rest = 1.0 - t11 - t12;
            for (double t21 : axis) {
                if (t21 > g2 + kFeasibilityTol || t21 > rest + kFeasibilityTol) break;
                const double q1 = q1_a + t21 * p2;
                for (double t22 : axis) {
                    if (t21 + t22 > g2 + kFeasibilityTol ||
                        t21 + t22 > rest + kFeasibilityTol) {
                        break;
                    }
                    const double q2 = q2_a + t22 * p2;
                    const double obj = eval(std::clamp(q1, 0.0, 1.0),
                                            std::clamp(q2, 0.0, 1.0));
                    if (obj < best_obj) {
                        best_obj = obj;
                        best = TdmaSchedule{t11, t12, t21, t22};
                    }
                }
            }
        }
    }

    PolicySolution out;
    out.method = SolveMethod::BaselineTdma;
    out.optimality_certificate = Certificate::BestFound;
    out.schedule = best;
    out.policy_1 = detail::make_policy(best.tau_11, best.tau_12);
    out.policy_2 = detail::make_policy(best.tau_21, best.tau_22);
    out.update_probs = tdma_update_probs(best, s.channel);
    out.objective_value = eval(out.update_probs);
    return out;
}

// Solver dispatch used by the experiment sweeps: vertex enumeration is exact
// when both correlation parameters are nonpositive, otherwise fall back to
// the grid search.
inline PolicySolution solve_optimized(const Scenario& s, int grid_resolution,
                                      int refine_rounds) {
    if (s.source_1.lambda() <= 0.0 && s.source_2.lambda() <= 0.0) {
        return solve_vertex_enum(s);
    }
    return solve_grid(s, grid_resolution, refine_rounds);
}

}  // namespace mprtrack
