// Joint (source, estimate) four-state chain and its stationary analysis.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mprtrack/source.hpp"

namespace mprtrack {

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Vector4 = std::array<double, 4>;

// Stationary analysis of the joint (state, estimate) chain for one source,
// states ordered s1=(0,0), s2=(0,1), s3=(1,0), s4=(1,1).
struct JointChainAnalysis {
    Matrix4 transition{};
    Vector4 stationary{};
    double mismatch_prob_01 = 0.0;  // pi(0,1)
    double mismatch_prob_10 = 0.0;  // pi(1,0)
    double rte = 0.0;               // pi(0,1) + pi(1,0)
    double zeta = 0.0;              // rte / 2
};

// Transition matrix of the joint chain under the slot convention
// "source evolves first, then a successful update synchronizes the estimate".
inline Matrix4 joint_transition_matrix(const SourceParams& src, double q) {
    validate(src);
    if (q < 0.0 || q > 1.0) {
        throw std::domain_error("update probability must lie in [0, 1], got " +
                                std::to_string(q));
    }
    const double a = src.alpha;
    const double b = src.beta;
    return Matrix4{{
        {1.0 - a, 0.0, a * (1.0 - q), a * q},
        {q * (1.0 - a), (1.0 - a) * (1.0 - q), 0.0, a},
        {b, 0.0, (1.0 - b) * (1.0 - q), q * (1.0 - b)},
        {b * q, b * (1.0 - q), 0.0, 1.0 - b},
    }};
}

namespace detail {

// Solves pi T = pi, sum(pi) = 1 by Gaussian elimination with partial
// pivoting on (I - T^t) with the last row replaced by the normalization
// constraint. The rows of I - T^t sum to zero, so dropping one loses nothing.
inline Vector4 stationary_of(const Matrix4& t) {
    std::array<std::array<double, 5>, 4> m{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m[r][c] = (r == c ? 1.0 : 0.0) - t[c][r];
        }
        m[r][4] = 0.0;
    }
    for (int c = 0; c < 5; ++c) {
        m[3][c] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        if (m[col][col] == 0.0) {
            throw std::domain_error("stationary solve hit a singular system");
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    Vector4 pi{};
    for (int r = 0; r < 4; ++r) {
        pi[r] = m[r][4] / m[r][r];
    }
    return pi;
}

}  // namespace detail

// Builds the joint chain and solves for its stationary distribution.
// Requires q > 0: at q = 0 the chain is not irreducible and has no unique
// stationary distribution; use rte_closed_form_limit for that endpoint.
inline JointChainAnalysis build_joint_chain(const SourceParams& src, double q) {
    if (q == 0.0) {
        throw std::domain_error(
            "joint chain is not irreducible at q = 0; use rte_closed_form_limit");
    }
    JointChainAnalysis out;
    out.transition = joint_transition_matrix(src, q);
    out.stationary = detail::stationary_of(out.transition);
    out.mismatch_prob_01 = out.stationary[1];
    out.mismatch_prob_10 = out.stationary[2];
    out.rte = out.mismatch_prob_01 + out.mismatch_prob_10;
    out.zeta = out.rte * 0.5;
    return out;
}

}  // namespace mprtrack
