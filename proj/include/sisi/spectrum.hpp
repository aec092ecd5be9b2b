#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <string_view>

#include "sisi/linalg.hpp"

namespace sisi {

/// Eigenvalues of a 4x4 Jacobian (1/day), sorted by descending real part.
struct Spectrum {
    std::array<std::complex<double>, 4> eigenvalues{};
    double lambda_max = 0.0;  // largest real part
};

inline Spectrum spectrum(const linalg::Matrix4& m) {
    Spectrum s;
    s.eigenvalues = linalg::eigenvalues(m);
    s.lambda_max = s.eigenvalues[0].real();
    for (const auto& z : s.eigenvalues) s.lambda_max = std::max(s.lambda_max, z.real());
    return s;
}

enum class Stability { stable, unstable, marginal };

inline constexpr std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::marginal: return "marginal";
    }
    return "unknown";
}

/// Width of the band around zero (1/day) in which lambda_max is read as marginal.
inline constexpr double kMarginalTolerance = 1e-10;

inline Stability stability_from_lambda(double lambda_max) {
    if (lambda_max < -kMarginalTolerance) return Stability::stable;
    if (lambda_max > kMarginalTolerance) return Stability::unstable;
    return Stability::marginal;
}

}  // namespace sisi
