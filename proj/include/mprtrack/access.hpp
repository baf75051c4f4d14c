// Access layer: sensor sampling policies, budgets, the MPR channel, and the
// mapping from policies (MPR random access or TDMA schedules) to per-source
// effective update probabilities.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mprtrack/source.hpp"

namespace mprtrack {

// Tolerance on budget and simplex feasibility comparisons; optimizer
// vertices sit exactly on the constraint boundary.
inline constexpr double kFeasibilityTol = 1e-12;

// Multi-packet reception channel. p_solo_k is the decoding probability of
// sensor k's packet when it transmits alone; p_joint_k when both sensors
// transmit in the same slot (decoded independently).
struct MprChannel {
    double p_solo_1 = 1.0;
    double p_solo_2 = 1.0;
    double p_joint_1 = 0.0;
    double p_joint_2 = 0.0;
};

inline void validate(const MprChannel& ch) {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(ch.p_solo_1) || !prob(ch.p_solo_2) || !prob(ch.p_joint_1) ||
        !prob(ch.p_joint_2)) {
        throw std::invalid_argument("channel probabilities must lie in [0, 1]");
    }
    if (ch.p_joint_1 > ch.p_solo_1 || ch.p_joint_2 > ch.p_solo_2) {
        throw std::invalid_argument(
            "simultaneous-transmission decoding cannot beat solo decoding");
    }
}

// Stationary randomized sampling policy of one sensor: per-slot distribution
// over {stay silent, sample source 1, sample source 2}.
struct SamplingPolicy {
    double silent = 1.0;
    double sample_1 = 0.0;
    double sample_2 = 0.0;
};

inline void validate(const SamplingPolicy& a) {
    if (a.silent < 0.0 || a.sample_1 < 0.0 || a.sample_2 < 0.0) {
        throw std::invalid_argument("policy probabilities must be nonnegative");
    }
    const double sum = a.silent + a.sample_1 + a.sample_2;
    if (std::abs(sum - 1.0) > kFeasibilityTol) {
        throw std::invalid_argument("policy probabilities must sum to 1, got " +
                                    std::to_string(sum));
    }
}

// Per-sensor sampling budgets: sensor k may transmit in at most a fraction
// gamma_k of slots.
struct Budget {
    double gamma_1 = 1.0;
    double gamma_2 = 1.0;
};

inline void validate(const Budget& b) {
    if (!(b.gamma_1 > 0.0) || b.gamma_1 > 1.0 || !(b.gamma_2 > 0.0) ||
        b.gamma_2 > 1.0) {
        throw std::invalid_argument("budgets must lie in (0, 1]");
    }
}

// True iff the policy's transmission probability fits the budget.
inline bool validate_budget(const SamplingPolicy& a, double gamma) {
    validate(a);
    return a.sample_1 + a.sample_2 <= gamma + kFeasibilityTol;
}

// Time-orthogonal schedule: tau_ki is the fraction of slots in which sensor k
// transmits source i; at most one sensor transmits per slot.
struct TdmaSchedule {
    double tau_11 = 0.0;
    double tau_12 = 0.0;
    double tau_21 = 0.0;
    double tau_22 = 0.0;
};

// Validates nonnegativity and the orthogonality constraint
// tau_11 + tau_12 + tau_21 + tau_22 <= 1.
inline void validate(const TdmaSchedule& s) {
    if (s.tau_11 < 0.0 || s.tau_12 < 0.0 || s.tau_21 < 0.0 || s.tau_22 < 0.0) {
        throw std::invalid_argument("schedule fractions must be nonnegative");
    }
    if (s.tau_11 + s.tau_12 + s.tau_21 + s.tau_22 > 1.0 + kFeasibilityTol) {
        throw std::invalid_argument("schedule fractions must sum to at most 1");
    }
}

// Additionally checks the per-sensor sampling budgets.
inline void validate(const TdmaSchedule& s, const Budget& b) {
    validate(s);
    validate(b);
    if (s.tau_11 + s.tau_12 > b.gamma_1 + kFeasibilityTol ||
        s.tau_21 + s.tau_22 > b.gamma_2 + kFeasibilityTol) {
        throw std::invalid_argument("schedule exceeds a sensor's sampling budget");
    }
}

// Per-source effective update probabilities.
struct UpdateProbs {
    double q_1 = 0.0;
    double q_2 = 0.0;
};

// Probability that at least one packet carrying source i's current state is
// decoded in a slot, summed over the joint sensor actions:
//
//   q_i = a_1i a_20 p_solo_1 + a_10 a_2i p_solo_2
//       + a_1i a_2i (1 - (1 - p_joint_1)(1 - p_joint_2))
//       + a_1i a_2j p_joint_1 + a_1j a_2i p_joint_2        (j = the other source)
inline UpdateProbs effective_update_probs(const SamplingPolicy& a1,
                                          const SamplingPolicy& a2,
                                          const MprChannel& ch) {
    validate(a1);
    validate(a2);
    validate(ch);
    const double both = 1.0 - (1.0 - ch.p_joint_1) * (1.0 - ch.p_joint_2);
    auto q_of = [&](double a1i, double a1j, double a2i, double a2j) {
        const double q = a1i * a2.silent * ch.p_solo_1 +
                         a1.silent * a2i * ch.p_solo_2 + a1i * a2i * both +
                         a1i * a2j * ch.p_joint_1 + a1j * a2i * ch.p_joint_2;
        return std::clamp(q, 0.0, 1.0);
    };
    return UpdateProbs{
        q_of(a1.sample_1, a1.sample_2, a2.sample_1, a2.sample_2),
        q_of(a1.sample_2, a1.sample_1, a2.sample_2, a2.sample_1),
    };
}

// Update probabilities under a TDMA schedule: the transmitting sensor is
// always alone in its slot, so solo decoding probabilities apply.
inline UpdateProbs tdma_update_probs(const TdmaSchedule& s, const MprChannel& ch) {
    validate(s);
    validate(ch);
    return UpdateProbs{
        std::clamp(s.tau_11 * ch.p_solo_1 + s.tau_21 * ch.p_solo_2, 0.0, 1.0),
        std::clamp(s.tau_12 * ch.p_solo_1 + s.tau_22 * ch.p_solo_2, 0.0, 1.0),
    };
}

}  // namespace mprtrack
