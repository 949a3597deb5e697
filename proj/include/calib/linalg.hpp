#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Small fixed-capacity vectors with runtime dimension.  Everything in this
// project lives in R^n for n <= 8, so a capacity-bounded array beats a heap
// vector and stays usable with non-double scalars (see jet.hpp).

namespace calib {

inline double value_of(double x) { return x; }

template <typename T, int Cap>
struct VecT {
    int n = 0;
    std::array<T, Cap> a{};

    VecT() = default;
    explicit VecT(int dim) : n(dim) {}

    T& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
    const T& operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

    VecT& operator+=(const VecT& o) {
        for (int i = 0; i < n; ++i) a[i] = a[i] + o.a[i];
        return *this;
    }
    VecT& operator-=(const VecT& o) {
        for (int i = 0; i < n; ++i) a[i] = a[i] - o.a[i];
        return *this;
    }
    VecT& operator*=(const T& s) {
        for (int i = 0; i < n; ++i) a[i] = a[i] * s;
        return *this;
    }
};

template <typename T, int Cap>
VecT<T, Cap> operator+(VecT<T, Cap> x, const VecT<T, Cap>& y) { return x += y; }
template <typename T, int Cap>
VecT<T, Cap> operator-(VecT<T, Cap> x, const VecT<T, Cap>& y) { return x -= y; }
template <typename T, int Cap>
VecT<T, Cap> operator*(const T& s, VecT<T, Cap> x) { return x *= s; }

template <typename T, int Cap>
T dot(const VecT<T, Cap>& x, const VecT<T, Cap>& y) {
    T s{};
    for (int i = 0; i < x.n; ++i) s = s + x.a[i] * y.a[i];
    return s;
}

template <typename T, int Cap>
T norm_squared(const VecT<T, Cap>& x) { return dot(x, x); }

template <typename T, int Cap>
T norm(const VecT<T, Cap>& x) {
    using std::sqrt;
    return sqrt(norm_squared(x));
}

using Vec2 = VecT<double, 2>;
using Vec4 = VecT<double, 4>;
using Vec8 = VecT<double, 8>;

inline Vec4 vec4(double x0, double x1, double x2, double x3) {
    Vec4 v(4);
    v[0] = x0; v[1] = x1; v[2] = x2; v[3] = x3;
    return v;
}

// Modified Gram-Schmidt over `count` vectors, in place.  Pivot magnitudes
// (pre-normalization norms) are written to `pivots` when non-null; returns
// false as soon as a pivot drops below `tol`.
template <typename T, int Cap>
bool gram_schmidt(VecT<T, Cap>* v, int count, double tol, double* pivots = nullptr) {
    using std::sqrt;
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < i; ++j) {
            T c = dot(v[i], v[j]);
            for (int k = 0; k < v[i].n; ++k) v[i].a[k] = v[i].a[k] - c * v[j].a[k];
        }
        T r = norm(v[i]);
        if (pivots) pivots[i] = value_of(r);
        if (!(value_of(r) > tol)) return false;
        T inv = T(1) / r;
        v[i] *= inv;
    }
    return true;
}

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

inline double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2])
         - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2])
         + m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

// Determinant of the n x n matrix whose rows are v[0..n-1] (n <= 4).
template <int Cap>
double det_rows(const VecT<double, Cap>* v, int n) {
    if (n == 1) return v[0][0];
    if (n == 2) return det2(v[0][0], v[0][1], v[1][0], v[1][1]);
    if (n == 3) {
        std::array<std::array<double, 3>, 3> m{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = v[i][j];
        return det3(m);
    }
    double sum = 0;
    for (int c = 0; c < 4; ++c) {
        std::array<std::array<double, 3>, 3> minor{};
        for (int i = 1; i < 4; ++i) {
            int jj = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == c) continue;
                minor[i - 1][jj++] = v[i][j];
            }
        }
        sum += ((c % 2 == 0) ? 1.0 : -1.0) * v[0][c] * det3(minor);
    }
    return sum;
}

}  // namespace calib
