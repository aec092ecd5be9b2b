#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "sisi/errors.hpp"

namespace sisi::linalg {

template <std::size_t N>
using Vector = std::array<double, N>;

/// Row-major dense square matrix.
template <std::size_t N>
using Matrix = std::array<Vector<N>, N>;

using Vector4 = Vector<4>;
using Matrix4 = Matrix<4>;

template <std::size_t N>
Matrix<N> identity() {
    Matrix<N> m{};
    for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
    return m;
}

template <std::size_t N>
Vector<N> multiply(const Matrix<N>& m, const Vector<N>& v) {
    Vector<N> out{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) out[i] += m[i][j] * v[j];
    return out;
}

template <std::size_t N>
double trace(const Matrix<N>& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += m[i][i];
    return t;
}

/// Maximum absolute column sum.
template <std::size_t N>
double norm1(const Matrix<N>& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < N; ++i) col += std::abs(m[i][j]);
        best = std::max(best, col);
    }
    return best;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& m) {
    for (const auto& row : m)
        for (double v : row)
            if (!std::isfinite(v)) return false;
    return true;
}

/// LU factorization with partial (row) pivoting, P*A = L*U. The factors are
/// immutable once built, so one factorization can serve many right-hand sides.
template <std::size_t N>
class LuFactorization {
public:
    explicit LuFactorization(const Matrix<N>& a) : lu_(a), norm1_(norm1(a)) {
        if (!all_finite(a)) throw NumericalError("LU: matrix has non-finite entries");
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        const double tiny = static_cast<double>(N) * std::numeric_limits<double>::epsilon() * norm1_;
        for (std::size_t k = 0; k < N; ++k) {
            std::size_t pivot = k;
            for (std::size_t i = k + 1; i < N; ++i)
                if (std::abs(lu_[i][k]) > std::abs(lu_[pivot][k])) pivot = i;
            if (std::abs(lu_[pivot][k]) <= tiny)
                throw NumericalError("LU: matrix is singular to working precision (column " + std::to_string(k) + ")");
            if (pivot != k) {
                std::swap(lu_[pivot], lu_[k]);
                std::swap(perm_[pivot], perm_[k]);
                sign_ = -sign_;
            }
            for (std::size_t i = k + 1; i < N; ++i) {
                const double m = lu_[i][k] / lu_[k][k];
                lu_[i][k] = m;
                for (std::size_t j = k + 1; j < N; ++j) lu_[i][j] -= m * lu_[k][j];
            }
        }
    }

    Vector<N> solve(const Vector<N>& b) const {
        Vector<N> x{};
        for (std::size_t i = 0; i < N; ++i) {
            double s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_[i][j] * x[j];
            x[i] = s;
        }
        for (std::size_t ii = N; ii-- > 0;) {
            double s = x[ii];
            for (std::size_t j = ii + 1; j < N; ++j) s -= lu_[ii][j] * x[j];
            x[ii] = s / lu_[ii][ii];
        }
        return x;
    }

    Matrix<N> inverse() const {
        Matrix<N> inv{};
        for (std::size_t j = 0; j < N; ++j) {
            Vector<N> e{};
            e[j] = 1.0;
            const Vector<N> col = solve(e);
            for (std::size_t i = 0; i < N; ++i) inv[i][j] = col[i];
        }
        return inv;
    }

    double determinant() const {
        double d = sign_;
        for (std::size_t i = 0; i < N; ++i) d *= lu_[i][i];
        return d;
    }

    /// 1-norm condition number. N is small, so the inverse is formed exactly
    /// rather than estimated.
    double condition_1() const { return norm1_ * norm1(inverse()); }

private:
    Matrix<N> lu_;
    std::array<std::size_t, N> perm_{};
    double norm1_;
    double sign_ = 1.0;
};

namespace detail {

// Diagonal similarity scaling by powers of the radix so rows and columns have
// comparable norms. Eigenvalues are unchanged.
template <std::size_t N>
void balance(Matrix<N>& a) {
    constexpr double radix = std::numeric_limits<double>::radix;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < N; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == i) continue;
                c += std::abs(a[j][i]);
                r += std::abs(a[i][j]);
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < N; ++j) a[i][j] *= g;
                for (std::size_t j = 0; j < N; ++j) a[j][i] *= f;
            }
        }
    }
}

// Reduction to upper Hessenberg form by stabilized elementary similarity
// transforms. Entries below the subdiagonal are zeroed on return.
template <std::size_t N>
void to_hessenberg(Matrix<N>& a) {
    for (std::size_t m = 1; m + 1 < N; ++m) {
        double x = 0.0;
        std::size_t i = m;
        for (std::size_t j = m; j < N; ++j) {
            if (std::abs(a[j][m - 1]) > std::abs(x)) {
                x = a[j][m - 1];
                i = j;
            }
        }
        if (i != m) {
            for (std::size_t j = m - 1; j < N; ++j) std::swap(a[i][j], a[m][j]);
            for (std::size_t j = 0; j < N; ++j) std::swap(a[j][i], a[j][m]);
        }
        if (x == 0.0) continue;
        for (i = m + 1; i < N; ++i) {
            double y = a[i][m - 1];
            if (y == 0.0) continue;
            y /= x;
            a[i][m - 1] = 0.0;
            for (std::size_t j = m; j < N; ++j) a[i][j] -= y * a[m][j];
            for (std::size_t j = 0; j < N; ++j) a[j][m] += y * a[j][i];
        }
    }
    for (std::size_t i = 2; i < N; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) a[i][j] = 0.0;
}

inline double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
template <std::size_t N>
std::array<std::complex<double>, N> hessenberg_qr(Matrix<N>& a) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iterations = 60;
    std::array<std::complex<double>, N> w{};

    double anorm = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = (i > 0 ? i - 1 : 0); j < N; ++j) anorm += std::abs(a[i][j]);

    // Signed indices keep the deflation bookkeeping readable.
    const auto n = static_cast<long>(N);
    long nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        long l = 0;
        do {
            for (l = nn; l > 0; --l) {
                double s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
                if (s == 0.0) s = anorm;
                if (std::abs(a[l][l - 1]) <= eps * s) {
                    a[l][l - 1] = 0.0;
                    break;
                }
            }
            double x = a[nn][nn];
            if (l == nn) {
                w[nn--] = x + t;
            } else {
                double y = a[nn - 1][nn - 1];
                double ww = a[nn][nn - 1] * a[nn - 1][nn];
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + ww;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        w[nn - 1] = w[nn] = x + z;
                        if (z != 0.0) w[nn] = x - ww / z;
                    } else {
                        w[nn] = std::complex<double>(x + p, -z);
                        w[nn - 1] = std::conj(w[nn]);
                    }
                    nn -= 2;
                } else {
                    if (its == max_iterations) throw NumericalError("eigenvalues: QR iteration did not converge");
                    if (its == 10 || its == 20) {
                        // exceptional shift
                        t += x;
                        for (long i = 0; i <= nn; ++i) a[i][i] -= x;
                        const double s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
                        y = x = 0.75 * s;
                        ww = -0.4375 * s * s;
                    }
                    ++its;
                    long m = nn - 2;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (; m >= l; --m) {
                        z = a[m][m];
                        r = x - z;
                        double s = y - z;
                        p = (r * s - ww) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s;
                        r = a[m + 2][m + 1];
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) + std::abs(a[m + 1][m + 1]));
                        if (u <= eps * v) break;
                    }
                    for (long i = m; i < nn - 1; ++i) {
                        a[i + 2][i] = 0.0;
                        if (i != m) a[i + 2][i - 1] = 0.0;
                    }
                    for (long k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if (k + 1 != nn) r = a[k + 2][k - 1];
                            if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a[k][k - 1] = -a[k][k - 1];
                        } else {
                            a[k][k - 1] = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (long j = k; j <= nn; ++j) {
                            p = a[k][j] + q * a[k + 1][j];
                            if (k + 1 != nn) {
                                p += r * a[k + 2][j];
                                a[k + 2][j] -= p * z;
                            }
                            a[k + 1][j] -= p * y;
                            a[k][j] -= p * x;
                        }
                        const long mmin = std::min(nn, k + 3);
                        for (long i = l; i <= mmin; ++i) {
                            p = x * a[i][k] + y * a[i][k + 1];
                            if (k + 1 != nn) {
                                p += z * a[i][k + 2];
                                a[i][k + 2] -= p * r;
                            }
                            a[i][k + 1] -= p * q;
                            a[i][k] -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return w;
}

}  // namespace detail

/// All eigenvalues of a real square matrix, sorted by descending real part
/// (ties by descending imaginary part). Throws NumericalError on non-finite
/// input or QR non-convergence.
template <std::size_t N>
std::array<std::complex<double>, N> eigenvalues(Matrix<N> a) {
    if (!all_finite(a)) throw NumericalError("eigenvalues: matrix has non-finite entries");
    detail::balance(a);
    detail::to_hessenberg(a);
    auto w = detail::hessenberg_qr(a);
    std::sort(w.begin(), w.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return w;
}

}  // namespace sisi::linalg
