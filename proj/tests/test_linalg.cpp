#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sisi/linalg.hpp"

using namespace sisi;
using linalg::Matrix4;

namespace {

Matrix4 random_matrix(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix4 m{};
    for (auto& row : m)
        for (double& v : row) v = u(rng);
    return m;
}

Matrix4 matmul(const Matrix4& a, const Matrix4& b) {
    Matrix4 c{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::vector<std::complex<double>> as_vector(const std::array<std::complex<double>, 4>& a) {
    return {a.begin(), a.end()};
}

}  // namespace

TEST(Lu, SolvesAndInvertsWithPivoting) {
    const Matrix4 a{{{0.0, 2.0, 1.0, 0.0}, {1.0, 0.0, 0.0, 3.0}, {4.0, 1.0, 0.0, 1.0}, {0.0, 0.0, 5.0, 1.0}}};
    const linalg::LuFactorization<4> lu(a);
    const linalg::Vector4 x_true{1.0, -2.0, 3.0, 0.5};
    linalg::Vector4 b{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b[i] += a[i][j] * x_true[j];
    const auto x = lu.solve(b);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(x[i], x_true[i], 1e-14);

    const auto prod = matmul(a, lu.inverse());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(prod[i][j], i == j ? 1.0 : 0.0, 1e-14);
    EXPECT_GE(lu.condition_1(), 1.0);
}

TEST(Lu, DeterminantMatchesCofactorExpansionOfTriangular) {
    const Matrix4 a{{{2.0, 0.0, 0.0, 0.0}, {1.0, 3.0, 0.0, 0.0}, {4.0, 1.0, -1.0, 0.0}, {0.0, 7.0, 5.0, 0.5}}};
    EXPECT_DOUBLE_EQ(linalg::LuFactorization<4>(a).determinant(), -3.0);
}

TEST(Lu, RejectsSingularAndNonFiniteMatrices) {
    Matrix4 singular{{{1.0, 2.0, 3.0, 4.0}, {2.0, 4.0, 6.0, 8.0}, {0.0, 1.0, 0.0, 1.0}, {1.0, 0.0, 1.0, 0.0}}};
    EXPECT_THROW(linalg::LuFactorization<4>{singular}, NumericalError);
    Matrix4 bad = linalg::identity<4>();
    bad[2][1] = std::nan("");
    EXPECT_THROW(linalg::LuFactorization<4>{bad}, NumericalError);
}

TEST(Eigen, DiagonalMatrix) {
    Matrix4 d{};
    d[0][0] = -1.0;
    d[1][1] = -2.0;
    d[2][2] = -3.0;
    d[3][3] = -4.0;
    const auto ev = linalg::eigenvalues(d);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(ev[i].real(), -1.0 - static_cast<double>(i), 1e-14);
        EXPECT_EQ(ev[i].imag(), 0.0);
    }
}

TEST(Eigen, RotationBlockGivesConjugatePair) {
    Matrix4 m{};
    m[0][1] = -2.0;
    m[1][0] = 2.0;
    m[0][0] = m[1][1] = -0.5;
    m[2][2] = 1.0;
    m[3][3] = 3.0;
    const auto ev = linalg::eigenvalues(m);
    EXPECT_NEAR(ev[0].real(), 3.0, 1e-14);
    EXPECT_NEAR(ev[1].real(), 1.0, 1e-14);
    EXPECT_NEAR(ev[2].real(), -0.5, 1e-14);
    EXPECT_NEAR(std::abs(ev[2].imag()), 2.0, 1e-14);
    EXPECT_NEAR(ev[2].imag(), -ev[3].imag(), 1e-14);
}

TEST(Eigen, AgreesWithCharacteristicQuarticRoots) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 200; ++k) {
        const Matrix4 m = random_matrix(rng);
        const auto ev = as_vector(linalg::eigenvalues(m));
        EXPECT_LE(oracle::match_error(ev, oracle::quartic_eigenvalues(m)), 1e-7) << "draw " << k;
    }
}

TEST(Eigen, AgreesWithQuarticOracleOnModelJacobians) {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 50; ++k) {
        const ModelParams p = oracle::random_params(rng, 1.1, 5.0);
        const auto e = endemic(p);
        ASSERT_TRUE(e.has_value());
        const Matrix4 J = jacobian(p, e->state);
        const auto ev = as_vector(linalg::eigenvalues(J));
        const auto ref = oracle::quartic_eigenvalues(J);
        double scale = 0.0;
        for (const auto& z : ref) scale = std::max(scale, std::abs(z));
        // Model Jacobians have entries far below 1, so measure relative to the spectral radius.
        std::vector<std::complex<double>> a, b;
        for (const auto& z : ev) a.push_back(z / scale);
        for (const auto& z : ref) b.push_back(z / scale);
        EXPECT_LE(oracle::match_error(a, b), 1e-7) << "draw " << k;
    }
}

TEST(Eigen, RespectsTraceAndDeterminant) {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 200; ++k) {
        const Matrix4 m = random_matrix(rng);
        const auto ev = linalg::eigenvalues(m);
        std::complex<double> sum = 0.0, prod = 1.0;
        for (const auto& z : ev) {
            sum += z;
            prod *= z;
        }
        const double tr = linalg::trace(m);
        const double det = linalg::LuFactorization<4>(m).determinant();
        const double norm = linalg::norm1(m);
        EXPECT_NEAR(sum.real(), tr, 1e-8 * std::max(std::abs(tr), norm));
        EXPECT_NEAR(sum.imag(), 0.0, 1e-8 * norm);
        EXPECT_NEAR(prod.real(), det, 1e-8 * std::max(std::abs(det), std::pow(norm, 4) * 1e-2));
        EXPECT_NEAR(prod.imag(), 0.0, 1e-8 * std::pow(norm, 4));
    }
}

TEST(Eigen, SortedByDescendingRealPart) {
    std::mt19937_64 rng(24);
    for (int k = 0; k < 50; ++k) {
        const auto ev = linalg::eigenvalues(random_matrix(rng));
        for (std::size_t i = 1; i < 4; ++i) EXPECT_GE(ev[i - 1].real(), ev[i].real());
    }
}

TEST(Eigen, RejectsNonFiniteInput) {
    Matrix4 m = linalg::identity<4>();
    m[0][3] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(linalg::eigenvalues(m), NumericalError);
}
