#pragma once

#include <cmath>
#include <limits>
#include <string_view>

#include "sisi/errors.hpp"
#include "sisi/params.hpp"

namespace sisi {

/// Basic reproduction number, Lambda beta (delta upsilon + 1 - upsilon) / (mu (mu + mu' + alpha)).
inline double r0(const ModelParams& p) {
    return p.Lambda * p.beta * p.susceptibility_factor() / (p.mu * p.removal_rate());
}

enum class ThresholdKind {
    attained,                   // value lies in the admissible range
    already_subcritical,        // R0 < 1 even at the most permissive end of the range
    unachievable,               // R0 > 1 even at the most restrictive end of the range
    unconditionally_subcritical,  // R0 == 0 for every value of the swept variable
    no_effect,                  // the swept variable does not enter R0
};

inline constexpr std::string_view to_string(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::attained: return "attained";
        case ThresholdKind::already_subcritical: return "already subcritical";
        case ThresholdKind::unachievable: return "unachievable";
        case ThresholdKind::unconditionally_subcritical: return "unconditionally subcritical";
        case ThresholdKind::no_effect: return "no effect";
    }
    return "unknown";
}

/// Solution of R0 = 1 in one variable. `value` is the unclamped root of the
/// affine threshold equation (infinite or NaN when no root exists); `kind`
/// says whether it lies in the variable's admissible range.
struct Threshold {
    ThresholdKind kind = ThresholdKind::attained;
    double value = std::numeric_limits<double>::quiet_NaN();

    bool attained() const { return kind == ThresholdKind::attained; }
};

/// Transmission rate at which R0 = 1, all other parameters fixed. R0 < 1 iff
/// beta < value.
inline Threshold beta_threshold(const ModelParams& p) {
    const double factor = p.susceptibility_factor();
    if (factor <= 0.0) return {ThresholdKind::unconditionally_subcritical, std::numeric_limits<double>::infinity()};
    return {ThresholdKind::attained, p.mu * p.removal_rate() / (p.Lambda * factor)};
}

/// Inverse of r0 in beta.
inline double beta_of_r0(double r0_target, const ModelParams& p) {
    if (!(r0_target >= 0.0)) throw DomainError("beta_of_r0: target R0 must be >= 0");
    if (r0_target == 0.0) return 0.0;
    const double factor = p.susceptibility_factor();
    if (factor <= 0.0) throw DomainError("beta_of_r0: R0 is identically zero (delta = 0, upsilon = 1)");
    return r0_target * p.mu * p.removal_rate() / (p.Lambda * factor);
}

/// Minimal vaccinated share giving R0 < 1 at fixed beta.
inline Threshold upsilon_threshold(const ModelParams& p) {
    if (p.delta >= 1.0) return {ThresholdKind::no_effect, std::numeric_limits<double>::quiet_NaN()};
    if (p.beta <= 0.0) return {ThresholdKind::already_subcritical, -std::numeric_limits<double>::infinity()};
    const double value = (1.0 - p.mu * p.removal_rate() / (p.Lambda * p.beta)) / (1.0 - p.delta);
    if (value < 0.0) return {ThresholdKind::already_subcritical, value};
    if (value > 1.0) return {ThresholdKind::unachievable, value};
    return {ThresholdKind::attained, value};
}

/// Minimal vaccine efficacy (1 - delta) giving R0 < 1 at the given upsilon,
/// beta and alpha.
inline Threshold efficacy_threshold(const ModelParams& p) {
    if (p.upsilon <= 0.0) return {ThresholdKind::no_effect, std::numeric_limits<double>::quiet_NaN()};
    if (p.beta <= 0.0) return {ThresholdKind::already_subcritical, -std::numeric_limits<double>::infinity()};
    const double delta_star = (p.mu * p.removal_rate() / (p.Lambda * p.beta) - 1.0 + p.upsilon) / p.upsilon;
    const double value = 1.0 - delta_star;
    if (value < 0.0) return {ThresholdKind::already_subcritical, value};
    if (value > 1.0) return {ThresholdKind::unachievable, value};
    return {ThresholdKind::attained, value};
}

/// Minimal recovery rate giving R0 < 1 at the given efficacy, upsilon and beta.
inline Threshold recovery_threshold(const ModelParams& p) {
    const double value = p.Lambda * p.beta * p.susceptibility_factor() / p.mu - p.mu - p.mu_prime;
    if (value <= 0.0) return {ThresholdKind::already_subcritical, value};
    return {ThresholdKind::attained, value};
}

struct EfficacyRecoveryThresholds {
    Threshold efficacy;  // minimal 1 - delta at the configured alpha
    Threshold alpha;     // minimal alpha at the configured delta
};

/// Both intervention thresholds on the R0 = 1 line of the (1-delta, alpha)
/// plane. The scenario of interest sets upsilon = 1.
inline EfficacyRecoveryThresholds efficacy_recovery_thresholds(const ModelParams& p) {
    return {efficacy_threshold(p), recovery_threshold(p)};
}

}  // namespace sisi
