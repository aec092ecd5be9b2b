#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "sisi/equilibria.hpp"
#include "sisi/errors.hpp"
#include "sisi/format.hpp"
#include "sisi/model.hpp"
#include "sisi/params.hpp"

namespace sisi {

struct Tolerances {
    double relative = 1e-8;
    double absolute = 1e-9;  // individuals
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

namespace ode {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Adaptive Dormand-Prince 5(4) with FSAL and PI step-size control. The
/// observer is called with (t, y) at t0, at every multiple of `stride` below
/// t_end, and at t_end; steps are shortened to land on those times exactly.
template <std::size_t N, class System, class Observer>
StepStats dopri5(System&& f, Vec<N> y, double t0, double t_end, double stride, const Tolerances& tol,
                 Observer&& observe, std::size_t max_steps = 50'000'000) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                     a76 = 11.0 / 84;
    // Difference between the 5th and embedded 4th order weights.
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    constexpr double safety = 0.9;
    constexpr double beta_pi = 0.04;
    constexpr double expo = 0.2 - beta_pi * 0.75;
    constexpr double fac_min = 0.2;   // largest shrink is 1/5
    constexpr double fac_max = 10.0;  // largest growth
    constexpr double eps = std::numeric_limits<double>::epsilon();

    StepStats stats;
    auto eval = [&](double t, const Vec<N>& x) {
        ++stats.evaluations;
        return f(t, x);
    };
    auto scale = [&](double a, double b) { return tol.absolute + tol.relative * std::max(std::abs(a), std::abs(b)); };
    auto rms = [](const Vec<N>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s / static_cast<double>(N));
    };

    double t = t0;
    Vec<N> k1 = eval(t, y);
    observe(t, y);

    // Initial step from the local Lipschitz estimate.
    double h;
    {
        Vec<N> dy{}, df{};
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = scale(y[i], y[i]);
            dy[i] = y[i] / sk;
            df[i] = k1[i] / sk;
        }
        const double d0 = rms(dy), d1 = rms(df);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, t_end - t0);
        Vec<N> y1{};
        for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + h0 * k1[i];
        const Vec<N> f1 = eval(t0 + h0, y1);
        Vec<N> d2v{};
        for (std::size_t i = 0; i < N; ++i) d2v[i] = (f1[i] - k1[i]) / scale(y[i], y[i]);
        const double d2 = rms(d2v) / h0;
        const double dmax = std::max(d1, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
        h = std::min(100.0 * h0, h1);
    }

    std::size_t next_index = 1;
    auto next_output = [&]() {
        const double candidate = t0 + stride * static_cast<double>(next_index);
        return candidate < t_end ? candidate : t_end;
    };

    double err_old = 1e-4;
    bool last_rejected = false;
    while (t < t_end) {
        if (stats.accepted + stats.rejected >= max_steps)
            throw NumericalError("integrate: step budget exhausted at t = " + full_precision(t));
        if (h < 16.0 * eps * std::max(std::abs(t), 1.0))
            throw NumericalError("integrate: step size underflow at t = " + full_precision(t));

        const double target = next_output();
        const bool lands = t + h >= target;
        const double step = lands ? target - t : h;

        Vec<N> tmp{};
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + step * a21 * k1[i];
        const Vec<N> k2 = eval(t + c2 * step, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
        const Vec<N> k3 = eval(t + c3 * step, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec<N> k4 = eval(t + c4 * step, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec<N> k5 = eval(t + c5 * step, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Vec<N> k6 = eval(t + step, tmp);
        Vec<N> y_new{};
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + step * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        const Vec<N> k7 = eval(t + step, y_new);

        Vec<N> err_vec{};
        for (std::size_t i = 0; i < N; ++i) {
            const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err_vec[i] = e / scale(y[i], y_new[i]);
        }
        const double err = rms(err_vec);
        if (!std::isfinite(err)) throw NumericalError("integrate: non-finite error estimate at t = " + full_precision(t));

        const double fac11 = std::pow(err, expo);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(err_old, beta_pi);
            fac = std::clamp(fac / safety, 1.0 / fac_max, 1.0 / fac_min);
            double h_new = step / fac;
            if (last_rejected) h_new = std::min(h_new, step);
            // A step shortened to hit an output time says little about the
            // sustainable step length; do not let it shrink the next one.
            if (lands && step < h) h_new = std::max(h_new, h);
            err_old = std::max(err, 1e-4);
            last_rejected = false;
            ++stats.accepted;

            t = lands ? target : t + step;
            y = y_new;
            k1 = k7;
            if (lands) {
                observe(t, y);
                ++next_index;
            }
            h = h_new;
        } else {
            h = step / std::min(1.0 / fac_min, fac11 / safety);
            last_rejected = true;
            ++stats.rejected;
        }
    }
    return stats;
}

}  // namespace ode

struct SimConfig {
    double t_end = 200000.0;        // days
    State initial = calibration::kInitial;
    double output_stride = 400.0;   // days
    Tolerances tolerances{};

    void validate() const {
        if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("t_end", "must be finite and > 0");
        if (!(output_stride > 0.0) || !std::isfinite(output_stride))
            throw ValidationError("stride", "must be finite and > 0");
        if (t_end < output_stride) throw ValidationError("stride", "must not exceed t_end");
        if (!(tolerances.relative > 0.0) || !(tolerances.absolute > 0.0))
            throw ValidationError("tolerances", "must be > 0");
        const auto x = initial.to_array();
        for (std::size_t i = 0; i < 4; ++i)
            if (!(x[i] >= 0.0) || !std::isfinite(x[i]))
                throw ValidationError(std::string(kCompartmentNames[i]) + "(0)", "must be finite and >= 0");
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    StepStats stats;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
};

/// Emitted components in [-kNegativeSlack, 0) are projected to zero; anything
/// more negative is a model violation.
inline constexpr double kNegativeSlack = 1e-6;

inline Trajectory integrate(const ModelParams& p, const SimConfig& cfg) {
    p.validate();
    cfg.validate();

    auto system = [&p](double, const ode::Vec<4>& y) { return rhs(p, State::from_array(y)).to_array(); };

    Trajectory traj;
    const auto expected = static_cast<std::size_t>(cfg.t_end / cfg.output_stride) + 2;
    traj.times.reserve(expected);
    traj.states.reserve(expected);

    // Projection happens on the emitted copy only; the integrator keeps its own state.
    auto observe = [&traj](double t, ode::Vec<4> y) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (y[i] < -kNegativeSlack)
                throw NumericalError("integrate: " + std::string(kCompartmentNames[i]) + " = " + full_precision(y[i]) +
                                     " < 0 at t = " + full_precision(t));
            if (y[i] < 0.0) y[i] = 0.0;
        }
        traj.times.push_back(t);
        traj.states.push_back(State::from_array(y));
    };

    traj.stats = ode::dopri5<4>(system, cfg.initial.to_array(), 0.0, cfg.t_end, cfg.output_stride, cfg.tolerances,
                                observe);
    return traj;
}

/// True iff every sample with t >= t_final - window lies within
/// max(tol |target|, 1 individual) of the target in every component.
inline bool converged_to(const Trajectory& traj, const Equilibrium& target, double window, double tol) {
    if (traj.empty()) return false;
    const double start = traj.times.back() - window;
    const auto goal = target.state.to_array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < start) continue;
        const auto x = traj.states[k].to_array();
        for (std::size_t i = 0; i < 4; ++i)
            if (std::abs(x[i] - goal[i]) > std::max(tol * std::abs(goal[i]), 1.0)) return false;
    }
    return true;
}

/// Largest componentwise relative deviation from `target` over the trailing window.
inline double max_relative_deviation(const Trajectory& traj, const State& target, double window) {
    double worst = 0.0;
    if (traj.empty()) return worst;
    const double start = traj.times.back() - window;
    const auto goal = target.to_array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < start) continue;
        const auto x = traj.states[k].to_array();
        for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(x[i] - goal[i]) / std::abs(goal[i]));
    }
    return worst;
}

struct OscillationMetrics {
    std::vector<double> peak_times;
    std::vector<double> peak_values;
};

/// Interior samples strictly above the previous sample and not below the next.
inline OscillationMetrics oscillation_metrics(const Trajectory& traj, Compartment c) {
    OscillationMetrics m;
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        const double prev = component(traj.states[k - 1], c);
        const double here = component(traj.states[k], c);
        const double next = component(traj.states[k + 1], c);
        if (here > prev && here >= next) {
            m.peak_times.push_back(traj.times[k]);
            m.peak_values.push_back(here);
        }
    }
    return m;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,S,I1,S1,I2\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const State& x = traj.states[k];
        os << full_precision(traj.times[k]) << ',' << full_precision(x.S) << ',' << full_precision(x.I1) << ','
           << full_precision(x.S1) << ',' << full_precision(x.I2) << '\n';
    }
}

}  // namespace sisi
