#pragma once

#include <array>
#include <cmath>

namespace matband {

/// Dense real 2x2 matrix, value type. Row-major storage.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
    static Mat2 antidiag(double u, double l) { return {0.0, u, l, 0.0}; }

    double operator()(int r, int c) const {
        return r == 0 ? (c == 0 ? a11 : a12) : (c == 0 ? a21 : a22);
    }

    Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
    Mat2& operator-=(const Mat2& o) { return *this = *this - o; }

    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
    double frobenius() const {
        return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22);
    }
    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

/// Inverse; throws std::invalid_argument when |det| <= 1e-14 * frobenius^2.
Mat2 inverse(const Mat2& m);

/// Row vector (1x2), the value type of the functions in this project.
using Row2 = std::array<double, 2>;

inline Row2 operator*(const Row2& v, const Mat2& m) {
    return {v[0] * m.a11 + v[1] * m.a21, v[0] * m.a12 + v[1] * m.a22};
}
inline Row2 operator+(const Row2& a, const Row2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Row2 operator-(const Row2& a, const Row2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Row2 operator*(double s, const Row2& v) { return {s * v[0], s * v[1]}; }
inline double norm2(const Row2& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1]); }

}  // namespace matband
