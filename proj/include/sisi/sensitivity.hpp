#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <ostream>

#include "sisi/equilibria.hpp"
#include "sisi/errors.hpp"
#include "sisi/format.hpp"
#include "sisi/linalg.hpp"
#include "sisi/model.hpp"
#include "sisi/params.hpp"

namespace sisi {

/// Normalized sensitivity indices (dR0/dp)(p/R0) in closed form. None depends
/// on beta; Lambda and beta are exactly 1.
inline PerParam<double> r0_indices(const ModelParams& p) {
    const double removal = p.removal_rate();
    const double factor = p.susceptibility_factor();
    PerParam<double> out;
    out[ParamName::upsilon] = (p.delta - 1.0) * p.upsilon / ((p.delta - 1.0) * p.upsilon + 1.0);
    out[ParamName::Lambda] = 1.0;
    out[ParamName::mu] = -p.mu / removal - 1.0;
    out[ParamName::beta] = 1.0;
    out[ParamName::mu_prime] = -p.mu_prime / removal;
    out[ParamName::alpha] = -p.alpha / removal;
    out[ParamName::delta] = p.delta * p.upsilon / factor;
    return out;
}

/// Normalized indices of the endemic coordinates (S, I1, S1, I2) for one parameter.
struct EndemicIndexRow {
    std::array<double, 4> index{};
    std::array<double, 4> derivative{};  // dX/dp, unnormalized
    std::array<bool, 4> small_denominator{};  // |coordinate| < 1 individual
};

struct EndemicSensitivity {
    Equilibrium equilibrium;
    PerParam<EndemicIndexRow> rows;
    double jacobian_condition = 0.0;  // 1-norm condition number of J(e1)
};

/// Implicit-function sensitivities of the endemic equilibrium: differentiating
/// f(x(p), p) = 0 gives J dx/dp = -df/dp. One LU factorization of J(e1) serves
/// all seven parameters.
inline EndemicSensitivity endemic_indices(const ModelParams& p) {
    const auto eq = endemic(p);
    if (!eq) throw DomainError("endemic_indices: R0 = " + full_precision(r0(p)) + " <= 1, no endemic equilibrium");

    EndemicSensitivity out;
    out.equilibrium = *eq;
    const State& x = eq->state;
    const linalg::LuFactorization<4> lu = [&] {
        try {
            return linalg::LuFactorization<4>(jacobian(p, x));
        } catch (const NumericalError& e) {
            throw NumericalError(std::string("endemic_indices: singular Jacobian, likely a bifurcation point (") +
                                 e.what() + ")");
        }
    }();
    out.jacobian_condition = lu.condition_1();

    const auto coords = x.to_array();
    for (ParamName which : kAllParams) {
        auto rhs_vec = param_gradient(p, x, which).to_array();
        for (double& v : rhs_vec) v = -v;
        const auto dx = lu.solve(rhs_vec);
        EndemicIndexRow& row = out.rows[which];
        const double value = p.get(which);
        for (std::size_t i = 0; i < 4; ++i) {
            row.derivative[i] = dx[i];
            row.index[i] = dx[i] * value / coords[i];
            row.small_denominator[i] = std::abs(coords[i]) < 1.0;
        }
    }
    return out;
}

struct SensitivityReport {
    PerParam<double> stage1;
    PerParam<double> reciprocal_stage1;  // 1 / stage1
    // -1 / stage1: relative change in p (percent) that lowers R0 by 1 percent.
    PerParam<double> effort_stage1;
    std::optional<EndemicSensitivity> stage2;  // absent when R0 <= 1
};

inline SensitivityReport sensitivity_report(const ModelParams& p) {
    SensitivityReport rep;
    rep.stage1 = r0_indices(p);
    for (ParamName which : kAllParams) {
        rep.reciprocal_stage1[which] = 1.0 / rep.stage1[which];
        rep.effort_stage1[which] = -1.0 / rep.stage1[which];
    }
    if (endemic(p)) rep.stage2 = endemic_indices(p);
    return rep;
}

inline void write_r0_sensitivity_csv(std::ostream& os, const SensitivityReport& rep) {
    os << "parameter,index,reciprocal,effort\n";
    for (ParamName which : kAllParams)
        os << key_of(which) << ',' << full_precision(rep.stage1[which]) << ','
           << full_precision(rep.reciprocal_stage1[which]) << ',' << full_precision(rep.effort_stage1[which]) << '\n';
}

inline void write_endemic_sensitivity_csv(std::ostream& os, const EndemicSensitivity& s) {
    os << "parameter,S,I1,S1,I2\n";
    for (ParamName which : kEndemicTableOrder) {
        const auto& row = s.rows[which];
        os << key_of(which);
        for (double v : row.index) os << ',' << full_precision(v);
        os << '\n';
    }
}

}  // namespace sisi
