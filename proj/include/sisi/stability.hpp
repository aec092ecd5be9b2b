#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "sisi/equilibria.hpp"
#include "sisi/errors.hpp"
#include "sisi/format.hpp"
#include "sisi/model.hpp"
#include "sisi/reproduction.hpp"
#include "sisi/spectrum.hpp"

namespace sisi {

/// Stability of an equilibrium from the spectrum of the Jacobian. For the
/// disease-free equilibrium the verdict is cross-checked against the sign of
/// its threshold eigenvalue Lambda beta (delta upsilon + 1 - upsilon)/mu - (mu + mu' + alpha),
/// and a stable/unstable contradiction is reported as a NumericalError.
inline Stability classify(const ModelParams& p, const Equilibrium& e) {
    if (rhs(p, e.state).max_abs() > residual_tolerance(p))
        throw DomainError("classify: state is not an equilibrium of the given parameters");

    const Stability spectral = stability_from_lambda(spectrum(jacobian(p, e.state)).lambda_max);
    if (e.kind == EquilibriumKind::disease_free) {
        const double threshold_eigenvalue = p.removal_rate() * (r0(p) - 1.0);
        const Stability by_r0 = stability_from_lambda(threshold_eigenvalue);
        const bool contradiction = (spectral == Stability::stable && by_r0 == Stability::unstable) ||
                                   (spectral == Stability::unstable && by_r0 == Stability::stable);
        if (contradiction)
            throw NumericalError("classify: spectral verdict '" + std::string(to_string(spectral)) +
                                 "' contradicts R0 = " + full_precision(r0(p)));
    }
    return spectral;
}

struct BifurcationPoint {
    double r0 = 0.0;
    double beta = 0.0;
    double i_dfe = 0.0;       // always 0
    double i_endemic = 0.0;   // total infections on the endemic branch, negative below threshold
    bool physical = false;    // i_endemic > 0
    bool dfe_stable = false;
    bool endemic_stable = false;
    double lambda_max_dfe = 0.0;
    double lambda_max_endemic = 0.0;
};

/// Sweeps R0 uniformly over [lo, hi] by varying beta, tracking both the
/// disease-free branch and the endemic quadratic branch (including its
/// non-physical part below R0 = 1).
inline std::vector<BifurcationPoint> bifurcation_scan(const ModelParams& base, double lo = 0.95, double hi = 1.05,
                                                      std::size_t n = 101) {
    if (n < 2) throw DomainError("bifurcation_scan: need at least two grid points");
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("bifurcation_scan: R0 grid must satisfy 0 < lo < hi");

    std::vector<BifurcationPoint> out(n);
    // Each point depends only on its index, so evaluation order cannot change the result.
    for (std::size_t k = 0; k < n; ++k) {
        BifurcationPoint& pt = out[k];
        pt.r0 = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        const ModelParams p = base.with(ParamName::beta, beta_of_r0(pt.r0, base));
        pt.beta = p.beta;

        const Equilibrium dfe = disease_free(p);
        pt.lambda_max_dfe = dfe.lambda_max;
        pt.dfe_stable = classify(p, dfe) == Stability::stable;

        pt.i_endemic = endemic_root(quad_coeffs(p));
        pt.physical = pt.i_endemic > 0.0;
        pt.lambda_max_endemic = spectrum(jacobian(p, equilibrium_state(p, pt.i_endemic))).lambda_max;
        pt.endemic_stable = stability_from_lambda(pt.lambda_max_endemic) == Stability::stable;
    }
    return out;
}

inline void write_bifurcation_csv(std::ostream& os, const std::vector<BifurcationPoint>& scan) {
    os << "r0,i_dfe,i_endemic,dfe_stable,endemic_stable,lambda_max_dfe,lambda_max_endemic\n";
    for (const auto& pt : scan) {
        os << full_precision(pt.r0) << ',' << full_precision(pt.i_dfe) << ',' << full_precision(pt.i_endemic) << ','
           << (pt.dfe_stable ? 1 : 0) << ',' << (pt.endemic_stable ? 1 : 0) << ',' << full_precision(pt.lambda_max_dfe)
           << ',' << full_precision(pt.lambda_max_endemic) << '\n';
    }
}

}  // namespace sisi
