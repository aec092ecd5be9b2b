#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "sisi/errors.hpp"
#include "sisi/model.hpp"
#include "sisi/params.hpp"
#include "sisi/reproduction.hpp"
#include "sisi/spectrum.hpp"

namespace sisi {

/// R0 within this relative distance of 1 counts as the threshold itself.
inline constexpr double kR0UnityTolerance = 1e-12;

/// Coefficients of A I^2 + B I + C = 0 for total infections I at an endemic
/// equilibrium.
struct QuadCoeffs {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;

    double operator()(double I) const { return (A * I + B) * I + C; }
};

inline QuadCoeffs quad_coeffs(const ModelParams& p) {
    const double removal = p.removal_rate();
    const double mu_mup = p.mu + p.mu_prime;
    return QuadCoeffs{
        p.delta * p.beta * p.beta * mu_mup,
        p.beta * (p.delta * p.mu * mu_mup + p.mu * removal - p.delta * p.beta * p.Lambda),
        p.mu * p.mu * removal * (1.0 - r0(p)),
    };
}

/// The root (-B + sqrt(B^2 - 4AC)) / (2A), evaluated without cancellation.
/// Reduces to -C/B when A = 0. This is the endemic branch, negative when
/// R0 < 1. Returns NaN when the discriminant is negative.
inline double endemic_root(const QuadCoeffs& q) {
    if (q.A == 0.0) {
        if (q.B == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return -q.C / q.B;
    }
    const double disc = q.B * q.B - 4.0 * q.A * q.C;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double root = std::sqrt(disc);
    if (q.B > 0.0) {
        // -B + root suffers cancellation; use the conjugate form 2C / (-B - root).
        return 2.0 * q.C / (-q.B - root);
    }
    return (-q.B + root) / (2.0 * q.A);
}

/// Coordinates of an equilibrium with total infections I.
inline State equilibrium_state(const ModelParams& p, double I) {
    const double removal = p.removal_rate();
    const double S = (1.0 - p.upsilon) * p.Lambda / (p.mu + p.beta * I);
    const double S1 = (p.upsilon * p.Lambda + p.alpha * I) / (p.mu + p.delta * p.beta * I);
    return State{S, p.beta * S * I / removal, S1, p.delta * p.beta * S1 * I / removal};
}

enum class EquilibriumKind { disease_free, endemic };

inline constexpr std::string_view to_string(EquilibriumKind k) {
    return k == EquilibriumKind::disease_free ? "disease-free" : "endemic";
}

struct Equilibrium {
    EquilibriumKind kind = EquilibriumKind::disease_free;
    State state;
    double r0_at = 0.0;
    Stability stability = Stability::marginal;
    double lambda_max = 0.0;  // 1/day
    double residual = 0.0;    // max |rhs| at state, individuals/day
};

/// Stability verdict read from R0 alone.
inline Stability stability_from_r0(double r0_value) {
    if (std::abs(r0_value - 1.0) <= kR0UnityTolerance) return Stability::marginal;
    return r0_value < 1.0 ? Stability::stable : Stability::unstable;
}

inline Equilibrium disease_free(const ModelParams& p) {
    Equilibrium e;
    e.kind = EquilibriumKind::disease_free;
    e.state = State{(1.0 - p.upsilon) * p.Lambda / p.mu, 0.0, p.upsilon * p.Lambda / p.mu, 0.0};
    e.r0_at = r0(p);
    e.stability = stability_from_r0(e.r0_at);
    e.lambda_max = spectrum(jacobian(p, e.state)).lambda_max;
    e.residual = rhs(p, e.state).max_abs();
    return e;
}

/// The unique positive endemic equilibrium, present iff R0 > 1.
inline std::optional<Equilibrium> endemic(const ModelParams& p) {
    const double r = r0(p);
    if (p.beta <= 0.0 || r <= 1.0 + kR0UnityTolerance) return std::nullopt;

    const double I = endemic_root(quad_coeffs(p));
    if (!(I > 0.0)) throw NumericalError("endemic: quadratic has no positive root although R0 > 1");

    Equilibrium e;
    e.kind = EquilibriumKind::endemic;
    e.state = equilibrium_state(p, I);
    e.r0_at = r;
    e.residual = rhs(p, e.state).max_abs();

    const double split_error = std::abs(e.state.I1 + e.state.I2 - I);
    if (split_error > 1e-8 * std::max(I, 1.0) || e.residual > residual_tolerance(p))
        throw NumericalError("endemic: inconsistent equilibrium (residual " + std::to_string(e.residual) +
                             ", I1+I2-I " + std::to_string(split_error) + ")");

    const Spectrum sp = spectrum(jacobian(p, e.state));
    e.lambda_max = sp.lambda_max;
    e.stability = stability_from_lambda(sp.lambda_max);
    return e;
}

}  // namespace sisi
