#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sisi/errors.hpp"

namespace sisi {

/// The seven model parameters. Enumerator order is the canonical order used
/// for R0 sensitivity output.
enum class ParamName { upsilon, Lambda, mu, beta, mu_prime, alpha, delta };

inline constexpr std::size_t kParamCount = 7;

inline constexpr std::array<ParamName, kParamCount> kAllParams = {
    ParamName::upsilon, ParamName::Lambda,   ParamName::mu,    ParamName::beta,
    ParamName::mu_prime, ParamName::alpha, ParamName::delta};

// Row order of the endemic-equilibrium sensitivity tables.
inline constexpr std::array<ParamName, kParamCount> kEndemicTableOrder = {
    ParamName::upsilon, ParamName::mu,    ParamName::beta,  ParamName::mu_prime,
    ParamName::alpha,   ParamName::delta, ParamName::Lambda};

inline constexpr std::size_t index_of(ParamName p) {
    const auto i = static_cast<std::size_t>(p);
    if (i >= kParamCount) throw std::invalid_argument("unknown parameter");
    return i;
}

/// Config-file key for a parameter.
inline constexpr std::string_view key_of(ParamName p) {
    constexpr std::array<std::string_view, kParamCount> keys = {
        "upsilon", "lambda", "mu", "beta", "mu_prime", "alpha", "delta"};
    return keys[index_of(p)];
}

inline std::optional<ParamName> param_from_key(std::string_view key) {
    for (ParamName p : kAllParams)
        if (key_of(p) == key) return p;
    return std::nullopt;
}

/// Fixed-size table indexed by parameter.
template <class T>
struct PerParam {
    std::array<T, kParamCount> values{};

    T& operator[](ParamName p) { return values[index_of(p)]; }
    const T& operator[](ParamName p) const { return values[index_of(p)]; }

    friend bool operator==(const PerParam&, const PerParam&) = default;
};

struct ModelParams {
    double upsilon = 0.0;   // vaccinated share of recruitment, [0,1]
    double Lambda = 0.0;    // recruitment, individuals/day
    double mu = 0.0;        // natural death rate, 1/day
    double beta = 0.0;      // transmission rate, 1/(individual*day)
    double mu_prime = 0.0;  // disease death rate, 1/day
    double alpha = 0.0;     // recovery rate, 1/day
    double delta = 0.0;     // 1 - vaccine efficacy, [0,1]

    double get(ParamName p) const {
        switch (p) {
            case ParamName::upsilon: return upsilon;
            case ParamName::Lambda: return Lambda;
            case ParamName::mu: return mu;
            case ParamName::beta: return beta;
            case ParamName::mu_prime: return mu_prime;
            case ParamName::alpha: return alpha;
            case ParamName::delta: return delta;
        }
        throw std::invalid_argument("unknown parameter");
    }

    double& ref(ParamName p) {
        switch (p) {
            case ParamName::upsilon: return upsilon;
            case ParamName::Lambda: return Lambda;
            case ParamName::mu: return mu;
            case ParamName::beta: return beta;
            case ParamName::mu_prime: return mu_prime;
            case ParamName::alpha: return alpha;
            case ParamName::delta: return delta;
        }
        throw std::invalid_argument("unknown parameter");
    }

    ModelParams with(ParamName p, double value) const {
        ModelParams copy = *this;
        copy.ref(p) = value;
        return copy;
    }

    /// Total per-capita outflow rate of an infected compartment.
    double removal_rate() const { return mu + mu_prime + alpha; }

    /// Lambda/mu, the population bound of the invariant region.
    double carrying_capacity() const { return Lambda / mu; }

    /// Effective susceptibility factor of the recruited population.
    double susceptibility_factor() const { return delta * upsilon + 1.0 - upsilon; }

    /// Throws ValidationError naming the first violated constraint.
    void validate() const {
        auto finite = [](std::string_view name, double v) {
            if (!std::isfinite(v)) throw ValidationError(std::string(name), "must be finite");
        };
        for (ParamName p : kAllParams) finite(key_of(p), get(p));
        if (upsilon < 0.0 || upsilon > 1.0) throw ValidationError("upsilon", "must lie in [0,1]");
        if (delta < 0.0 || delta > 1.0) throw ValidationError("delta", "must lie in [0,1]");
        if (!(Lambda > 0.0)) throw ValidationError("lambda", "must be > 0");
        if (!(mu > 0.0)) throw ValidationError("mu", "must be > 0");
        if (!(mu_prime > 0.0)) throw ValidationError("mu_prime", "must be > 0");
        if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
        if (beta < 0.0) throw ValidationError("beta", "must be >= 0");
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

namespace calibration {

inline constexpr double kMu = 1.0 / (65.0 * 365.0);
inline constexpr double kLambda = 234666020.0 / 23725.0;  // mu * N(0)
inline constexpr double kMuPrime = 0.0291;
inline constexpr double kAlpha = 0.011;
inline constexpr double kDelta = 1.0 - 0.653;
inline constexpr double kUpsilon = 0.0167;
inline constexpr double kBetaLow = 2e-10;
inline constexpr double kBetaHigh = 8e-10;

/// Indonesia parameter set; beta and upsilon vary between scenarios.
inline ModelParams params(double beta = kBetaLow, double upsilon = kUpsilon) {
    return ModelParams{upsilon, kLambda, kMu, beta, kMuPrime, kAlpha, kDelta};
}

}  // namespace calibration

/// A point (S, I1, S1, I2) in compartment space, in individuals.
struct State {
    double S = 0.0;
    double I1 = 0.0;
    double S1 = 0.0;
    double I2 = 0.0;

    double total() const { return S + I1 + S1 + I2; }
    double infected() const { return I1 + I2; }

    std::array<double, 4> to_array() const { return {S, I1, S1, I2}; }
    static State from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

    double operator[](std::size_t i) const { return to_array()[i]; }

    friend bool operator==(const State&, const State&) = default;
};

enum class Compartment { S, I1, S1, I2 };

inline constexpr std::array<std::string_view, 4> kCompartmentNames = {"S", "I1", "S1", "I2"};

inline double component(const State& x, Compartment c) { return x[static_cast<std::size_t>(c)]; }

/// Time derivative of a State, individuals/day.
struct Deriv {
    double dS = 0.0;
    double dI1 = 0.0;
    double dS1 = 0.0;
    double dI2 = 0.0;

    double sum() const { return dS + dI1 + dS1 + dI2; }
    std::array<double, 4> to_array() const { return {dS, dI1, dS1, dI2}; }

    double max_abs() const {
        return std::max(std::max(std::abs(dS), std::abs(dI1)), std::max(std::abs(dS1), std::abs(dI2)));
    }

    friend bool operator==(const Deriv&, const Deriv&) = default;
};

namespace calibration {

/// Initial condition for March 20, 2023, using the rounded integers as printed.
inline constexpr State kInitial{230743437.0, 3660.0, 3918922.0, 0.0};

}  // namespace calibration

}  // namespace sisi
