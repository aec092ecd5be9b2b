#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sisi/sisi.hpp"

using namespace sisi;

namespace {

void expect_close(const State& got, const State& want, double rel) {
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(got[i], want[i], rel * std::abs(want[i])) << kCompartmentNames[i];
}

}  // namespace

TEST(DiseaseFree, CalibratedCoverage) {
    const Equilibrium e = disease_free(calibration::params());
    EXPECT_NEAR(e.state.S, 0.9833 * 234666020.0, 1e-6);
    EXPECT_NEAR(e.state.S1, 0.0167 * 234666020.0, 1e-6);
    EXPECT_EQ(e.state.I1, 0.0);
    EXPECT_EQ(e.state.I2, 0.0);
    EXPECT_EQ(e.kind, EquilibriumKind::disease_free);
}

TEST(DiseaseFree, CoverageExtremes) {
    const ModelParams p = calibration::params();
    const double cap = p.carrying_capacity();
    expect_close(disease_free(p.with(ParamName::upsilon, 0.0)).state, State{cap, 0, 0, 0}, 1e-15);
    EXPECT_EQ(disease_free(p.with(ParamName::upsilon, 0.0)).state.S1, 0.0);
    EXPECT_EQ(disease_free(p.with(ParamName::upsilon, 1.0)).state.S, 0.0);
    EXPECT_NEAR(disease_free(p.with(ParamName::upsilon, 1.0)).state.S1, cap, 1e-6);
}

TEST(QuadCoeffs, ConstantTermVanishesAtThreshold) {
    const ModelParams p = calibration::params();
    const QuadCoeffs q = quad_coeffs(p.with(ParamName::beta, beta_of_r0(1.0, p)));
    EXPECT_NEAR(q.C, 0.0, 1e-16 * std::abs(quad_coeffs(p).C) + 1e-300);
}

TEST(QuadCoeffs, PerfectVaccineDegeneratesToLinear) {
    const ModelParams p = calibration::params(2e-10).with(ParamName::delta, 0.0);
    const QuadCoeffs q = quad_coeffs(p);
    EXPECT_EQ(q.A, 0.0);
    EXPECT_DOUBLE_EQ(q.B, p.beta * p.mu * p.removal_rate());
    EXPECT_GT(q.B, 0.0);
}

TEST(QuadCoeffs, MatchExactRationalExpressionsInR0) {
    const ModelParams base = calibration::params();
    for (double R : {0.95, 1.0, 1.05, 1.15643, 2.0}) {
        const QuadCoeffs q = quad_coeffs(base.with(ParamName::beta, beta_of_r0(R, base)));
        const double A = 1547420825179752197.0 / 5116022763961580751185838014489445844000.0 * R * R;
        const double B =
            11190529508566.0 / 109006467232912135109843300161.0 * R * (1572380558426459.0 / 440631010000000.0 - R);
        const double C = 380949.0 / 5341689681250000.0 * (1.0 - R);
        EXPECT_NEAR(q.A, A, 1e-10 * std::abs(A)) << "R0 " << R;
        EXPECT_NEAR(q.B, B, 1e-10 * std::abs(B)) << "R0 " << R;
        EXPECT_NEAR(q.C, C, 1e-10 * std::abs(380949.0 / 5341689681250000.0)) << "R0 " << R;
    }
}

TEST(QuadCoeffs, ConstantTermSignFollowsR0) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 200; ++k) {
        const ModelParams p = oracle::random_params(rng, 0.2, 5.0);
        const QuadCoeffs q = quad_coeffs(p);
        const double r = r0(p);
        EXPECT_EQ(std::signbit(q.C), std::signbit(1.0 - r)) << "draw " << k;
        if (r < 1.0) {
            EXPECT_GE(q.A, 0.0);
            EXPECT_GE(q.B, 0.0);
            EXPECT_GE(q.C, 0.0);
        }
    }
}

TEST(Endemic, LowTransmissionCoordinates) {
    const ModelParams p = calibration::params(2e-10);
    const auto e = endemic(p);
    ASSERT_TRUE(e.has_value());
    expect_close(e->state, State{1.96e8, 3.62e4, 1.28e7, 8.19e2}, 0.01);
    EXPECT_LE(e->residual, residual_tolerance(p));
    EXPECT_EQ(e->kind, EquilibriumKind::endemic);
}

TEST(Endemic, HighTransmissionCoordinates) {
    const ModelParams p = calibration::params(8e-10);
    const auto e = endemic(p);
    ASSERT_TRUE(e.has_value());
    expect_close(e->state, State{4.12e7, 1.99e5, 2.59e7, 4.34e4}, 0.01);
    EXPECT_LE(e->residual, residual_tolerance(p));
}

TEST(Endemic, RootMatchesBisectionOracle) {
    const ModelParams p = calibration::params(2e-10);
    const QuadCoeffs q = quad_coeffs(p);
    const double I = endemic(p)->state.infected();
    const double ref = oracle::bisect([&](double v) { return q(v); }, 0.0, p.carrying_capacity());
    EXPECT_NEAR(I, ref, 1e-8 * ref);
}

TEST(Endemic, RootMatchesBisectionOracleOnSupercriticalDraws) {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 50; ++k) {
        const ModelParams p = oracle::random_params(rng, 1.05, 5.0);
        const auto e = endemic(p);
        ASSERT_TRUE(e.has_value()) << "draw " << k;
        const QuadCoeffs q = quad_coeffs(p);
        const double ref = oracle::bisect([&](double v) { return q(v); }, 0.0, p.carrying_capacity());
        const double I = e->state.infected();
        EXPECT_NEAR(I, ref, 1e-8 * ref) << "draw " << k;
    }
}

TEST(Endemic, AbsentBelowThreshold) {
    const ModelParams p = calibration::params();
    EXPECT_FALSE(endemic(p.with(ParamName::beta, beta_of_r0(0.9, p))).has_value());
    EXPECT_FALSE(endemic(p.with(ParamName::beta, beta_of_r0(1.0, p))).has_value());
    EXPECT_FALSE(endemic(calibration::params(0.0)).has_value());
}

TEST(Endemic, PerfectVaccineUsesLinearBranch) {
    const ModelParams p = calibration::params(8e-10).with(ParamName::delta, 0.0);
    const auto e = endemic(p);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->state.I2, 0.0);
    EXPECT_LE(e->residual, residual_tolerance(p));
}

TEST(Endemic, InvariantsOnSupercriticalDraws) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 200; ++k) {
        const ModelParams p = oracle::random_params(rng, 1.01, 8.0);
        const auto e = endemic(p);
        ASSERT_TRUE(e.has_value());
        const QuadCoeffs q = quad_coeffs(p);
        const double I = e->state.infected();
        const double scale = std::max({std::abs(q.A) * I * I, std::abs(q.B) * I, std::abs(q.C)});
        EXPECT_LE(std::abs(q(I)), 1e-8 * scale) << "draw " << k;
        EXPECT_LE(e->residual, residual_tolerance(p));
        EXPECT_LE(e->state.total(), p.carrying_capacity() * (1.0 + 1e-12));
        for (std::size_t i = 0; i < 4; ++i) EXPECT_GE(e->state[i], 0.0);
        EXPECT_EQ(e->stability, Stability::stable) << "draw " << k << " lambda_max " << e->lambda_max;
    }
}
