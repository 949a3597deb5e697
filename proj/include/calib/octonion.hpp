#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

// Octonion arithmetic over the ordered basis (1, i, j, k, e, ie, je, ke).
// Every other module addresses octonion coordinates by this index convention:
//   0:1  1:i  2:j  3:k  4:e  5:ie  6:je  7:ke
// The quaternions sit in coordinates 0..3 and the complementary summand He
// in 4..7.  Products go through a signed-index table that is cross-checked
// once, at first use, against a second copy generated by Cayley-Dickson
// doubling of the quaternions.

namespace calib {

struct Octonion {
    std::array<double, 8> c{};

    double& operator[](int idx) { return c[static_cast<std::size_t>(idx)]; }
    double operator[](int idx) const { return c[static_cast<std::size_t>(idx)]; }

    static Octonion unit(int idx) {
        Octonion o;
        o.c[static_cast<std::size_t>(idx)] = 1;
        return o;
    }
    static Octonion one() { return unit(0); }
};

inline Octonion operator+(const Octonion& a, const Octonion& b) {
    Octonion r;
    for (int t = 0; t < 8; ++t) r.c[t] = a.c[t] + b.c[t];
    return r;
}

inline Octonion operator-(const Octonion& a, const Octonion& b) {
    Octonion r;
    for (int t = 0; t < 8; ++t) r.c[t] = a.c[t] - b.c[t];
    return r;
}

inline Octonion operator-(const Octonion& a) {
    Octonion r;
    for (int t = 0; t < 8; ++t) r.c[t] = -a.c[t];
    return r;
}

inline Octonion operator*(double s, const Octonion& a) {
    Octonion r;
    for (int t = 0; t < 8; ++t) r.c[t] = s * a.c[t];
    return r;
}

inline double dot(const Octonion& a, const Octonion& b) {
    double s = 0;
    for (int t = 0; t < 8; ++t) s += a.c[t] * b.c[t];
    return s;
}

inline double norm(const Octonion& a) { return std::sqrt(dot(a, a)); }

inline Octonion conj(const Octonion& a) {
    Octonion r = -a;
    r.c[0] = a.c[0];
    return r;
}

// Signed basis product: basis_sign/basis_index give  u_a u_b = sign * u_index.
const std::array<std::array<signed char, 8>, 8>& basis_sign();
const std::array<std::array<unsigned char, 8>, 8>& basis_index();

Octonion mul(const Octonion& a, const Octonion& b);
inline Octonion operator*(const Octonion& a, const Octonion& b) { return mul(a, b); }

// (ab)c - a(bc); vanishes exactly on associative triples.
Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c);

// Imaginary octonion: real coordinate pinned to zero.
struct ImOctonion {
    Octonion o;

    ImOctonion() = default;
    explicit ImOctonion(const Octonion& x) : o(x) { o.c[0] = 0; }
};

inline double norm(const ImOctonion& a) { return norm(a.o); }

struct CayleyProduct {
    ImOctonion value;
    bool degenerate = false;
};

// Alternating 4-fold product  Im(a x b x c x d) = Im(conj(a) (b (conj(c) d)))
// for orthogonal arguments, extended by multilinearity to arbitrary ones
// (Gram-Schmidt on the span, evaluate on the orthonormal tuple, scale back
// by the pivot product).  Vanishes on linearly independent 4-tuples exactly
// when their span is a Cayley 4-plane.  Linearly dependent inputs set the
// degenerate flag.
CayleyProduct cayley_product_im(const Octonion& a, const Octonion& b, const Octonion& c,
                                const Octonion& d, double tol = 1e-10);

// Clifford action of a 1-form on a spinor: left octonion multiplication by an
// element of He = span{e, ie, je, ke}.  Rejects alpha with a component
// outside He.
Octonion clifford_gamma(const Octonion& alpha, const Octonion& s);

}  // namespace calib
