// Binary Markov source model and closed-form reconstruction-error expressions.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mprtrack {

// Margin used when validating probabilities that must be strictly interior.
inline constexpr double kInteriorMargin = 1e-9;

// One binary Markov source. alpha is the 0->1 transition probability per
// slot, beta the 1->0 probability. weight is the source's semantic weight in
// the combined objective; cost_01 / cost_10 are the actuation costs of acting
// on estimate 1 while the state is 0 and vice versa.
struct SourceParams {
    double alpha = 0.5;
    double beta = 0.5;
    double weight = 1.0;
    double cost_01 = 1.0;
    double cost_10 = 1.0;

    // Correlation parameter: positive for sticky sources, negative for
    // alternating ones, zero for a memoryless source.
    double lambda() const { return 1.0 - alpha - beta; }
};

// Throws std::invalid_argument unless alpha, beta lie in
// [kInteriorMargin, 1 - kInteriorMargin] and weight/costs are nonnegative.
inline void validate(const SourceParams& src) {
    auto interior = [](double p) {
        return p >= kInteriorMargin && p <= 1.0 - kInteriorMargin;
    };
    if (!interior(src.alpha) || !interior(src.beta)) {
        throw std::invalid_argument(
            "source transition probabilities must lie strictly inside (0, 1): alpha=" +
            std::to_string(src.alpha) + " beta=" + std::to_string(src.beta));
    }
    if (src.weight < 0.0 || src.cost_01 < 0.0 || src.cost_10 < 0.0) {
        throw std::invalid_argument("source weight and costs must be nonnegative");
    }
}

// Stationary distribution (p0, p1) of the two-state chain:
// p0 = beta/(alpha+beta), p1 = alpha/(alpha+beta).
inline std::pair<double, double> stationary_source_dist(const SourceParams& src) {
    validate(src);
    const double s = src.alpha + src.beta;
    return {src.beta / s, src.alpha / s};
}

// Steady-state probability that the receiver's estimate differs from the
// source state when updates arrive independently with probability q per slot:
//
//   E(q) = 2 alpha beta (1 - q) / [ (alpha+beta) ((alpha+beta) - q (alpha+beta-1)) ]
//
// Strictly decreasing in q, zero at q = 1. q must lie in (0, 1]; the chain
// used to derive this expression is not irreducible at q = 0, use
// rte_closed_form_limit for that endpoint.
inline double rte_closed_form(const SourceParams& src, double q) {
    validate(src);
    if (!(q > 0.0) || q > 1.0) {
        throw std::domain_error("update probability must lie in (0, 1], got " +
                                std::to_string(q));
    }
    const double s = src.alpha + src.beta;
    return 2.0 * src.alpha * src.beta * (1.0 - q) / (s * (s - q * (s - 1.0)));
}

// q -> 0 limit of rte_closed_form: the mismatch probability of two
// independent draws from the stationary distribution, 2 alpha beta / (alpha+beta)^2.
inline double rte_closed_form_limit(const SourceParams& src) {
    validate(src);
    const double s = src.alpha + src.beta;
    return 2.0 * src.alpha * src.beta / (s * s);
}

// Expected actuation cost of acting on a mismatched estimate. Both mismatch
// states are equally likely in steady state, so this is
// (cost_01 + cost_10) / 2 times the reconstruction error.
inline double cae_closed_form(const SourceParams& src, double q) {
    return (src.cost_01 + src.cost_10) * 0.5 * rte_closed_form(src, q);
}

// w1 * v1 + w2 * v2.
inline double weighted_objective(std::pair<double, double> values,
                                 std::pair<double, double> weights) {
    if (weights.first < 0.0 || weights.second < 0.0) {
        throw std::invalid_argument("objective weights must be nonnegative");
    }
    return weights.first * values.first + weights.second * values.second;
}

// Weight that turns a weighted cost objective into an equivalent weighted
// error objective: w * (cost_01 + cost_10) / 2.
inline double cae_weight_transform(const SourceParams& src) {
    validate(src);
    return src.weight * (src.cost_01 + src.cost_10) * 0.5;
}

}  // namespace mprtrack
