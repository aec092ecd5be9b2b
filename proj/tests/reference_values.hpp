#pragma once

// Published sensitivity indices at the calibrated parameters (upsilon = 0.0167).

#include <array>

#include "sisi/params.hpp"

namespace reference {

struct R0Row {
    sisi::ParamName param;
    double index;
    double effort;  // -1 / index, the percent change in p for a 1 percent drop in R0
};

inline constexpr std::array<R0Row, 7> kR0Indices{{
    {sisi::ParamName::upsilon, -0.01103, 90.70021},
    {sisi::ParamName::Lambda, 1.00000, -1.00000},
    {sisi::ParamName::mu, -1.00105, 0.99895},
    {sisi::ParamName::beta, 1.00000, -1.00000},
    {sisi::ParamName::mu_prime, -0.72492, 1.37946},
    {sisi::ParamName::alpha, -0.27403, 3.64929},
    {sisi::ParamName::delta, 0.00586, -170.68369},
}};

struct EndemicRow {
    sisi::ParamName param;
    std::array<double, 4> index;  // S, I1, S1, I2
};

inline constexpr std::array<EndemicRow, 7> kEndemicLow{{
    {sisi::ParamName::upsilon, {-0.00538, -0.08303, 0.23779, 0.16014}},
    {sisi::ParamName::mu, {0.11838, -6.36751, -5.18350, -11.66939}},
    {sisi::ParamName::beta, {-1.11719, 6.35968, 4.17828, 11.65515}},
    {sisi::ParamName::mu_prime, {0.82283, -5.40895, -3.60137, -9.83315}},
    {sisi::ParamName::alpha, {0.29317, -1.94289, -0.57169, -2.80775}},
    {sisi::ParamName::delta, {-0.02368, 0.13478, 0.04617, 1.20462}},
    {sisi::ParamName::Lambda, {-0.11719, 7.35968, 5.17828, 12.65515}},
}};

inline constexpr std::array<EndemicRow, 7> kEndemicHigh{{
    {sisi::ParamName::upsilon, {-0.01231, -0.01800, 0.05648, 0.05078}},
    {sisi::ParamName::mu, {0.11024, -0.24237, -0.50004, -0.85265}},
    {sisi::ParamName::beta, {-1.10884, 0.24102, -0.50052, 0.84934}},
    {sisi::ParamName::mu_prime, {0.96670, -0.93504, -0.38459, -2.28634}},
    {sisi::ParamName::alpha, {0.14074, -0.30462, 0.88567, 0.44032}},
    {sisi::ParamName::delta, {-0.09190, 0.01997, -0.57830, 0.53357}},
    {sisi::ParamName::Lambda, {-0.10884, 1.24102, 0.49948, 1.84934}},
}};

}  // namespace reference
