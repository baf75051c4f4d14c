// Slot-level Monte Carlo simulation of the full system: source evolution,
// randomized or TDMA sampling, decoding, and synchronize-or-hold estimation.
// Serves as the independent empirical oracle for the closed forms.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "mprtrack/access.hpp"
#include "mprtrack/optimizer.hpp"
#include "mprtrack/rng.hpp"
#include "mprtrack/source.hpp"

namespace mprtrack {

// Number of equal batches used for batch-means standard errors.
inline constexpr int kBatchCount = 100;

using PolicyPair = std::pair<SamplingPolicy, SamplingPolicy>;

struct SimConfig {
    Scenario scenario;
    std::variant<PolicyPair, TdmaSchedule> policy;
    std::uint64_t horizon = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t warmup = 10'000;
};

// Empirical estimates over the measured span. Standard errors for the error
// and cost series come from batch means (the indicators are autocorrelated);
// update events are independent across slots, so their standard error uses
// the Bernoulli formula.
struct SimResult {
    double empirical_rte_1 = 0.0;
    double empirical_rte_2 = 0.0;
    double empirical_cae_1 = 0.0;
    double empirical_cae_2 = 0.0;
    double empirical_q_1 = 0.0;
    double empirical_q_2 = 0.0;
    double std_err_rte_1 = 0.0;
    double std_err_rte_2 = 0.0;
    double std_err_cae_1 = 0.0;
    double std_err_cae_2 = 0.0;
    double std_err_q_1 = 0.0;
    double std_err_q_2 = 0.0;
    // Mismatch-state occupancies and the batch-means standard error of their
    // per-slot difference, for checking the stationary symmetry.
    double occupancy_01_1 = 0.0;
    double occupancy_10_1 = 0.0;
    double occupancy_01_2 = 0.0;
    double occupancy_10_2 = 0.0;
    double std_err_mismatch_diff_1 = 0.0;
    double std_err_mismatch_diff_2 = 0.0;
    std::uint64_t slots_measured = 0;
};

namespace detail {

// Batch-means accumulator for one scalar per-slot series.
struct BatchStats {
    double batch_sum = 0.0;
    double total = 0.0;
    double mean_sum = 0.0;
    double mean_sq_sum = 0.0;

    void add(double v) {
        batch_sum += v;
        total += v;
    }
    void close_batch(double batch_size) {
        const double m = batch_sum / batch_size;
        mean_sum += m;
        mean_sq_sum += m * m;
        batch_sum = 0.0;
    }
    double mean(double n) const { return total / n; }
    double std_err() const {
        const double b = kBatchCount;
        const double var =
            (mean_sq_sum - mean_sum * mean_sum / b) / (b - 1.0);
        return std::sqrt(std::max(0.0, var) / b);
    }
};

// Per-source measurement series.
struct SourceStats {
    BatchStats err;    // 1{X != Xhat}
    BatchStats cost;   // cost_01 1{(0,1)} + cost_10 1{(1,0)}
    BatchStats occ01;  // 1{(0,1)}
    BatchStats occ10;  // 1{(1,0)}
    BatchStats diff;   // 1{(0,1)} - 1{(1,0)}
    std::uint64_t updates = 0;

    void record(int x, int xhat, const SourceParams& src) {
        const double m01 = (x == 0 && xhat == 1) ? 1.0 : 0.0;
        const double m10 = (x == 1 && xhat == 0) ? 1.0 : 0.0;
        err.add(m01 + m10);
        cost.add(src.cost_01 * m01 + src.cost_10 * m10);
        occ01.add(m01);
        occ10.add(m10);
        diff.add(m01 - m10);
    }
    void close_batch(double batch_size) {
        err.close_batch(batch_size);
        cost.close_batch(batch_size);
        occ01.close_batch(batch_size);
        occ10.close_batch(batch_size);
        diff.close_batch(batch_size);
    }
};

inline int draw_initial_state(SplitMix64& rng, const SourceParams& src) {
    const double p_one = src.alpha / (src.alpha + src.beta);
    return rng.next_double() < p_one ? 1 : 0;
}

inline int step_source(SplitMix64& rng, int x, const SourceParams& src) {
    const double u = rng.next_double();
    if (x == 0) return u < src.alpha ? 1 : 0;
    return u < src.beta ? 0 : 1;
}

// 0 = silent, 1 = sample source 1, 2 = sample source 2.
inline int draw_action(SplitMix64& rng, const SamplingPolicy& a) {
    const double u = rng.next_double();
    if (u < a.silent) return 0;
    if (u < a.silent + a.sample_1) return 1;
    return 2;
}

inline std::uint64_t measured_span(std::uint64_t horizon, std::uint64_t warmup) {
    if (horizon <= warmup) {
        throw std::invalid_argument("horizon must exceed warmup");
    }
    const std::uint64_t raw = horizon - warmup;
    const std::uint64_t span =
        raw / kBatchCount * static_cast<std::uint64_t>(kBatchCount);
    if (span == 0) {
        throw std::invalid_argument(
            "horizon must exceed warmup by at least " +
            std::to_string(kBatchCount) + " slots for batch statistics");
    }
    return span;
}

inline SimResult finalize(const SourceStats& s1, const SourceStats& s2,
                          std::uint64_t span) {
    const double n = static_cast<double>(span);
    auto bernoulli_se = [n](double p) {
        return std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
    };
    SimResult r;
    r.slots_measured = span;
    r.empirical_rte_1 = s1.err.mean(n);
    r.empirical_rte_2 = s2.err.mean(n);
    r.empirical_cae_1 = s1.cost.mean(n);
    r.empirical_cae_2 = s2.cost.mean(n);
    r.empirical_q_1 = static_cast<double>(s1.updates) / n;
    r.empirical_q_2 = static_cast<double>(s2.updates) / n;
    r.std_err_rte_1 = s1.err.std_err();
    r.std_err_rte_2 = s2.err.std_err();
    r.std_err_cae_1 = s1.cost.std_err();
    r.std_err_cae_2 = s2.cost.std_err();
    r.std_err_q_1 = bernoulli_se(r.empirical_q_1);
    r.std_err_q_2 = bernoulli_se(r.empirical_q_2);
    r.occupancy_01_1 = s1.occ01.mean(n);
    r.occupancy_10_1 = s1.occ10.mean(n);
    r.occupancy_01_2 = s2.occ01.mean(n);
    r.occupancy_10_2 = s2.occ10.mean(n);
    r.std_err_mismatch_diff_1 = s1.diff.std_err();
    r.std_err_mismatch_diff_2 = s2.diff.std_err();
    return r;
}

}  // namespace detail

// Simulates the MPR random-access system under a pair of stationary
// randomized policies. Slot order: both sources evolve, each sensor draws an
// action, decoding outcomes are drawn (solo or simultaneous probability by
// transmit pattern), estimates synchronize on success, and the error is
// measured after the update. Every slot consumes exactly six random draws in
// a fixed order regardless of branch outcomes, so the stream is
// reproducible by construction.
inline SimResult simulate_mpr(const SimConfig& cfg, const PolicyPair& pair) {
    const Scenario& sc = cfg.scenario;
    validate(sc);
    validate(pair.first);
    validate(pair.second);
    if (!validate_budget(pair.first, sc.budget.gamma_1) ||
        !validate_budget(pair.second, sc.budget.gamma_2)) {
        throw std::invalid_argument("policy exceeds the sensor's sampling budget");
    }
    const std::uint64_t span = detail::measured_span(cfg.horizon, cfg.warmup);
    const std::uint64_t batch_size = span / kBatchCount;

    SplitMix64 rng(cfg.seed);
    int x1 = detail::draw_initial_state(rng, sc.source_1);
    int x2 = detail::draw_initial_state(rng, sc.source_2);
    int xh1 = x1;
    int xh2 = x2;

    detail::SourceStats st1, st2;
    const std::uint64_t total_slots = cfg.warmup + span;
    for (std::uint64_t t = 0; t < total_slots; ++t) {
        x1 = detail::step_source(rng, x1, sc.source_1);
        x2 = detail::step_source(rng, x2, sc.source_2);
        const int act1 = detail::draw_action(rng, pair.first);
        const int act2 = detail::draw_action(rng, pair.second);
        const double u1 = rng.next_double();
        const double u2 = rng.next_double();

        const bool both = act1 != 0 && act2 != 0;
        const bool z1 =
            act1 != 0 && u1 < (both ? sc.channel.p_joint_1 : sc.channel.p_solo_1);
        const bool z2 =
            act2 != 0 && u2 < (both ? sc.channel.p_joint_2 : sc.channel.p_solo_2);
        const bool upd1 = (z1 && act1 == 1) || (z2 && act2 == 1);
        const bool upd2 = (z1 && act1 == 2) || (z2 && act2 == 2);
        if (upd1) xh1 = x1;
        if (upd2) xh2 = x2;

        if (t >= cfg.warmup) {
            st1.record(x1, xh1, sc.source_1);
            st2.record(x2, xh2, sc.source_2);
            st1.updates += upd1 ? 1 : 0;
            st2.updates += upd2 ? 1 : 0;
            if ((t - cfg.warmup + 1) % batch_size == 0) {
                st1.close_batch(static_cast<double>(batch_size));
                st2.close_batch(static_cast<double>(batch_size));
            }
        }
    }
    return detail::finalize(st1, st2, span);
}

// Simulates the TDMA baseline: per slot one (sensor, source) pair is active,
// drawn i.i.d. from the schedule's time fractions, and decodes with the
// sensor's solo probability. Four random draws per slot, always consumed.
inline SimResult simulate_tdma(const SimConfig& cfg) {
    const auto* sched = std::get_if<TdmaSchedule>(&cfg.policy);
    if (sched == nullptr) {
        throw std::invalid_argument("simulate_tdma requires a TDMA schedule");
    }
    const Scenario& sc = cfg.scenario;
    validate(sc);
    validate(*sched, sc.budget);
    const std::uint64_t span = detail::measured_span(cfg.horizon, cfg.warmup);
    const std::uint64_t batch_size = span / kBatchCount;

    SplitMix64 rng(cfg.seed);
    int x1 = detail::draw_initial_state(rng, sc.source_1);
    int x2 = detail::draw_initial_state(rng, sc.source_2);
    int xh1 = x1;
    int xh2 = x2;

    const double c1 = sched->tau_11;
    const double c2 = c1 + sched->tau_12;
    const double c3 = c2 + sched->tau_21;
    const double c4 = c3 + sched->tau_22;

    detail::SourceStats st1, st2;
    const std::uint64_t total_slots = cfg.warmup + span;
    for (std::uint64_t t = 0; t < total_slots; ++t) {
        x1 = detail::step_source(rng, x1, sc.source_1);
        x2 = detail::step_source(rng, x2, sc.source_2);
        const double us = rng.next_double();
        const double ud = rng.next_double();

        // Active (sensor, source): 0 none, else (k, i) by threshold interval.
        int source = 0;
        double p = 0.0;
        if (us < c1) {
            source = 1;
            p = sc.channel.p_solo_1;
        } else if (us < c2) {
            source = 2;
            p = sc.channel.p_solo_1;
        } else if (us < c3) {
            source = 1;
            p = sc.channel.p_solo_2;
        } else if (us < c4) {
            source = 2;
            p = sc.channel.p_solo_2;
        }
        const bool upd1 = source == 1 && ud < p;
        const bool upd2 = source == 2 && ud < p;
        if (upd1) xh1 = x1;
        if (upd2) xh2 = x2;

        if (t >= cfg.warmup) {
            st1.record(x1, xh1, sc.source_1);
            st2.record(x2, xh2, sc.source_2);
            st1.updates += upd1 ? 1 : 0;
            st2.updates += upd2 ? 1 : 0;
            if ((t - cfg.warmup + 1) % batch_size == 0) {
                st1.close_batch(static_cast<double>(batch_size));
                st2.close_batch(static_cast<double>(batch_size));
            }
        }
    }
    return detail::finalize(st1, st2, span);
}

// Runs the simulation matching the config's policy alternative.
inline SimResult simulate(const SimConfig& cfg) {
    if (const auto* pair = std::get_if<PolicyPair>(&cfg.policy)) {
        return simulate_mpr(cfg, *pair);
    }
    return simulate_tdma(cfg);
}

}  // namespace mprtrack
