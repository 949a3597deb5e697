#pragma once

#include <cmath>
#include <stdexcept>

// Forward-mode derivatives in the two surface parameters (u, v).
//
// Jet2 carries value, gradient and Hessian and is the primary differentiator:
// chain-rule propagation is exact to round-off, so second-derivative
// quantities (curvatures, calibration defects) carry no truncation error.
// Dual2 carries first derivatives only; it is what frame fields are
// differentiated with.

namespace calib {

struct JetDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Jet2 {
    double v = 0;                      // value
    double du = 0, dv = 0;             // gradient
    double huu = 0, huv = 0, hvv = 0;  // Hessian (symmetric by construction)

    static Jet2 constant(double c) { return Jet2{c, 0, 0, 0, 0, 0}; }
    static Jet2 var_u(double u) { return Jet2{u, 1, 0, 0, 0, 0}; }
    static Jet2 var_v(double v) { return Jet2{v, 0, 1, 0, 0, 0}; }
};

inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.du, -a.dv, -a.huu, -a.huv, -a.hvv}; }

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.huu + b.huu, a.huv + b.huv, a.hvv + b.hvv};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.huu - b.huu, a.huv - b.huv, a.hvv - b.hvv};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.du * b.v + a.v * b.du,
            a.dv * b.v + a.v * b.dv,
            a.huu * b.v + 2 * a.du * b.du + a.v * b.huu,
            a.huv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.huv,
            a.hvv * b.v + 2 * a.dv * b.dv + a.v * b.hvv};
}

inline Jet2 operator*(double s, const Jet2& a) {
    return {s * a.v, s * a.du, s * a.dv, s * a.huu, s * a.huv, s * a.hvv};
}

// f(g) for scalar f with derivatives f1 = f'(g.v), f2 = f''(g.v).
inline Jet2 chain(const Jet2& g, double f0, double f1, double f2) {
    return {f0,
            f1 * g.du,
            f1 * g.dv,
            f1 * g.huu + f2 * g.du * g.du,
            f1 * g.huv + f2 * g.du * g.dv,
            f1 * g.hvv + f2 * g.dv * g.dv};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0) throw JetDomainError("division by zero");
    return a * chain(b, 1.0 / b.v, -1.0 / (b.v * b.v), 2.0 / (b.v * b.v * b.v));
}

inline Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

inline Jet2 tan(const Jet2& a) {
    double t = std::tan(a.v);
    double s = 1 + t * t;  // sec^2
    return chain(a, t, s, 2 * t * s);
}

inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.v);
    return chain(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
    if (!(a.v > 0)) throw JetDomainError("log of non-positive value");
    return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline Jet2 sqrt(const Jet2& a) {
    if (!(a.v > 0)) throw JetDomainError("sqrt of non-positive value");
    double r = std::sqrt(a.v);
    return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

inline Jet2 sinh(const Jet2& a) { return chain(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet2 cosh(const Jet2& a) { return chain(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }

inline Jet2 tanh(const Jet2& a) {
    double t = std::tanh(a.v);
    double s = 1 - t * t;
    return chain(a, t, s, -2 * t * s);
}

// a^s for real s.  std::pow covers integral s with negative bases; anything
// else needs a positive base.
inline Jet2 pow(const Jet2& a, double s) {
    bool integral = s == std::nearbyint(s) && std::abs(s) < 1e9;
    if (a.v == 0) {
        if (s < 0) throw JetDomainError("zero raised to a negative power");
        if (s == 0) return Jet2::constant(1);
    } else if (a.v < 0 && !integral) {
        throw JetDomainError("negative base with non-integer exponent");
    }
    double f0 = std::pow(a.v, s);
    double f1 = (s == 0) ? 0 : s * std::pow(a.v, s - 1);
    double f2 = (s == 0 || s == 1) ? 0 : s * (s - 1) * std::pow(a.v, s - 2);
    return chain(a, f0, f1, f2);
}

inline Jet2 pow(const Jet2& a, const Jet2& b) {
    if (b.du == 0 && b.dv == 0 && b.huu == 0 && b.huv == 0 && b.hvv == 0) return pow(a, b.v);
    if (!(a.v > 0)) throw JetDomainError("non-constant exponent requires positive base");
    return exp(b * log(a));
}

inline Jet2 atan2(const Jet2& y, const Jet2& x) {
    double r2 = x.v * x.v + y.v * y.v;
    if (r2 == 0) throw JetDomainError("atan2 at the origin");
    // theta_a = (x y_a - y x_a) / r^2
    double nu = x.v * y.du - y.v * x.du;
    double nv = x.v * y.dv - y.v * x.dv;
    Jet2 out;
    out.v = std::atan2(y.v, x.v);
    out.du = nu / r2;
    out.dv = nv / r2;
    auto second = [&](double xa, double ya, double xb, double yb, double xab, double yab,
                      double na) {
        double dn = xb * ya + x.v * yab - yb * xa - y.v * xab;
        double dr2 = 2 * (x.v * xb + y.v * yb);
        return dn / r2 - na * dr2 / (r2 * r2);
    };
    out.huu = second(x.du, y.du, x.du, y.du, x.huu, y.huu, nu);
    out.huv = second(x.du, y.du, x.dv, y.dv, x.huv, y.huv, nu);
    out.hvv = second(x.dv, y.dv, x.dv, y.dv, x.hvv, y.hvv, nv);
    return out;
}

// First-order dual number in (u, v).
struct Dual2 {
    double v = 0;
    double du = 0, dv = 0;

    Dual2() = default;
    Dual2(double value) : v(value) {}
    Dual2(double value, double pu, double pv) : v(value), du(pu), dv(pv) {}
};

inline double value_of(const Dual2& x) { return x.v; }

inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.du, -a.dv}; }
inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.du + b.du, a.dv + b.dv}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.du - b.du, a.dv - b.dv}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.du * b.v + a.v * b.du, a.dv * b.v + a.v * b.dv};
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
    double inv = 1.0 / b.v;
    double q = a.v * inv;
    return {q, (a.du - q * b.du) * inv, (a.dv - q * b.dv) * inv};
}
inline Dual2 sqrt(const Dual2& a) {
    double r = std::sqrt(a.v);
    double half = 0.5 / r;
    return {r, half * a.du, half * a.dv};
}

}  // namespace calib
