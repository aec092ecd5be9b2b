#pragma once

#include <stdexcept>

#include "sisi/linalg.hpp"
#include "sisi/params.hpp"

namespace sisi {

/// Right-hand side of the SISI system:
///   S'  = (1-upsilon)Lambda - mu S - beta S I
///   I1' = beta S I - (mu + mu' + alpha) I1
///   S1' = upsilon Lambda + alpha I - mu S1 - delta beta S1 I
///   I2' = delta beta S1 I - (mu + mu' + alpha) I2
/// with I = I1 + I2.
inline Deriv rhs(const ModelParams& p, const State& x) {
    const double infected = x.I1 + x.I2;
    const double primary_infection = p.beta * x.S * infected;
    const double reinfection = p.delta * p.beta * x.S1 * infected;
    const double removal = p.removal_rate();
    return Deriv{
        (1.0 - p.upsilon) * p.Lambda - p.mu * x.S - primary_infection,
        primary_infection - removal * x.I1,
        p.upsilon * p.Lambda + p.alpha * infected - p.mu * x.S1 - reinfection,
        reinfection - removal * x.I2,
    };
}

/// Analytic Jacobian d(rhs)/d(S, I1, S1, I2).
inline linalg::Matrix4 jacobian(const ModelParams& p, const State& x) {
    const double force = p.beta * (x.I1 + x.I2);  // force of infection on S
    const double bS = p.beta * x.S;
    const double dbS1 = p.delta * p.beta * x.S1;
    const double removal = p.removal_rate();
    return linalg::Matrix4{{
        {-p.mu - force, -bS, 0.0, -bS},
        {force, bS - removal, 0.0, bS},
        {0.0, p.alpha - dbS1, -p.mu - p.delta * force, p.alpha - dbS1},
        {0.0, dbS1, p.delta * force, dbS1 - removal},
    }};
}

/// Partial derivative of rhs with respect to one parameter at fixed state.
inline Deriv param_gradient(const ModelParams& p, const State& x, ParamName which) {
    const double infected = x.I1 + x.I2;
    switch (which) {
        case ParamName::upsilon: return {-p.Lambda, 0.0, p.Lambda, 0.0};
        case ParamName::Lambda: return {1.0 - p.upsilon, 0.0, p.upsilon, 0.0};
        case ParamName::mu: return {-x.S, -x.I1, -x.S1, -x.I2};
        case ParamName::beta: {
            const double reinfection = p.delta * x.S1 * infected;
            return {-x.S * infected, x.S * infected, -reinfection, reinfection};
        }
        case ParamName::mu_prime: return {0.0, -x.I1, 0.0, -x.I2};
        case ParamName::alpha: return {0.0, -x.I1, infected, -x.I2};
        case ParamName::delta: {
            const double reinfection = p.beta * x.S1 * infected;
            return {0.0, 0.0, -reinfection, reinfection};
        }
    }
    throw std::invalid_argument("param_gradient: unknown parameter");
}

/// Equilibrium residual tolerance: coordinates quoted to three significant
/// figures leave residual flux on the order of 1e-4 Lambda.
inline double residual_tolerance(const ModelParams& p) { return 1e-4 * p.Lambda; }

}  // namespace sisi
