#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace orbits {

using Complex = std::complex<double>;

// 2x2 real matrix. Group elements are kept in SL(2,R): |det - 1| <= 1e-12
// after construction from exact data; products of words of length <~ 60
// stay far below the test tolerances.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }

    // a_t = diag(e^{t/2}, e^{-t/2}), the geodesic one-parameter subgroup.
    static Mat2 geodesic(double t) {
        const double e = std::exp(0.5 * t);
        return {e, 0.0, 0.0, 1.0 / e};
    }

    // n_s = ((1,s),(0,1)), the horocyclic one-parameter subgroup.
    static Mat2 horocycle(double s) { return {1.0, s, 0.0, 1.0}; }

    // ((cos,sin),(-sin,cos)): fixes i, rotates the tangent vector there.
    static Mat2 rotation(double phi) {
        const double cp = std::cos(phi), sp = std::sin(phi);
        return {cp, sp, -sp, cp};
    }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    // Inverse of a unit-determinant matrix, exact on the entries.
    Mat2 inverse() const { return {d, -b, -c, a}; }

    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    double frobenius_sq() const { return a * a + b * b + c * c + d * d; }
    double frobenius() const { return std::sqrt(frobenius_sq()); }

    // Largest singular value; for M with singular values s >= s',
    // s^2 + s'^2 = |M|_F^2 and s*s' = |det|.
    double op_norm() const {
        const double f2 = frobenius_sq();
        const double dd = det();
        const double disc = std::max(0.0, f2 * f2 - 4.0 * dd * dd);
        return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
    }

    std::array<double, 4> entries() const { return {a, b, c, d}; }
};

inline Mat2 mat_pow(Mat2 m, int n) {
    if (n < 0) { m = m.inverse(); n = -n; }
    Mat2 r = Mat2::identity();
    while (n > 0) {
        if (n & 1) r = r * m;
        m = m * m;
        n >>= 1;
    }
    return r;
}

inline double max_abs_entry(const Mat2& m) {
    return std::max(std::max(std::abs(m.a), std::abs(m.b)),
                    std::max(std::abs(m.c), std::abs(m.d)));
}

inline double max_entry_diff(const Mat2& x, const Mat2& y) {
    return std::max(std::max(std::abs(x.a - y.a), std::abs(x.b - y.b)),
                    std::max(std::abs(x.c - y.c), std::abs(x.d - y.d)));
}

}  // namespace orbits
