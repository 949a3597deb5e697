#include "calib/octonion.hpp"

#include "calib/linalg.hpp"

#include <cstdlib>

namespace calib {

namespace {

struct SignedIndex {
    signed char sign;
    unsigned char index;
};

// Copy A: the multiplication table transcribed row by row (row times column).
constexpr SignedIndex kTableA[8][8] = {
    // 1
    {{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}, {+1, 4}, {+1, 5}, {+1, 6}, {+1, 7}},
    // i
    {{+1, 1}, {-1, 0}, {+1, 3}, {-1, 2}, {+1, 5}, {-1, 4}, {-1, 7}, {+1, 6}},
    // j
    {{+1, 2}, {-1, 3}, {-1, 0}, {+1, 1}, {+1, 6}, {+1, 7}, {-1, 4}, {-1, 5}},
    // k
    {{+1, 3}, {+1, 2}, {-1, 1}, {-1, 0}, {+1, 7}, {-1, 6}, {+1, 5}, {-1, 4}},
    // e
    {{+1, 4}, {-1, 5}, {-1, 6}, {-1, 7}, {-1, 0}, {+1, 1}, {+1, 2}, {+1, 3}},
    // ie
    {{+1, 5}, {+1, 4}, {-1, 7}, {+1, 6}, {-1, 1}, {-1, 0}, {-1, 3}, {+1, 2}},
    // je
    {{+1, 6}, {+1, 7}, {+1, 4}, {-1, 5}, {-1, 2}, {+1, 3}, {-1, 0}, {-1, 1}},
    // ke
    {{+1, 7}, {-1, 6}, {+1, 5}, {+1, 4}, {-1, 3}, {-1, 2}, {+1, 1}, {-1, 0}},
};

struct Quat {
    // coefficients on (1, i, j, k)
    std::array<int, 4> c{};
};

Quat quat_unit(int idx) {
    Quat q;
    q.c[static_cast<std::size_t>(idx)] = 1;
    return q;
}

Quat quat_conj(const Quat& a) {
    return Quat{{a.c[0], -a.c[1], -a.c[2], -a.c[3]}};
}

Quat quat_mul(const Quat& a, const Quat& b) {
    // Hamilton products on integer coefficients.
    Quat r;
    r.c[0] = a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2];
    r.c[2] = a.c[0] * b.c[2] - a.c[1] * b.c[3] + a.c[2] * b.c[0] + a.c[3] * b.c[1];
    r.c[3] = a.c[0] * b.c[3] + a.c[1] * b.c[2] - a.c[2] * b.c[1] + a.c[3] * b.c[0];
    return r;
}

// Copy B: Cayley-Dickson doubling.  Writing x = a + b e as the pair (a, b),
//   (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c)).
SignedIndex doubling_product(int r, int s) {
    Quat a = (r < 4) ? quat_unit(r) : Quat{};
    Quat b = (r < 4) ? Quat{} : quat_unit(r - 4);
    Quat c = (s < 4) ? quat_unit(s) : Quat{};
    Quat d = (s < 4) ? Quat{} : quat_unit(s - 4);

    Quat first = quat_mul(a, c);
    Quat t = quat_mul(quat_conj(d), b);
    for (int m = 0; m < 4; ++m) first.c[m] -= t.c[m];
    Quat second = quat_mul(d, a);
    t = quat_mul(b, quat_conj(c));
    for (int m = 0; m < 4; ++m) second.c[m] += t.c[m];

    for (int m = 0; m < 4; ++m) {
        if (first.c[m] != 0)
            return {static_cast<signed char>(first.c[m]), static_cast<unsigned char>(m)};
        if (second.c[m] != 0)
            return {static_cast<signed char>(second.c[m]), static_cast<unsigned char>(m + 4)};
    }
    std::abort();  // basis products never vanish
}

struct Tables {
    std::array<std::array<signed char, 8>, 8> sign{};
    std::array<std::array<unsigned char, 8>, 8> index{};
};

Tables build_and_check_tables() {
    Tables t;
    for (int r = 0; r < 8; ++r) {
        for (int s = 0; s < 8; ++s) {
            SignedIndex a = kTableA[r][s];
            SignedIndex b = doubling_product(r, s);
            if (a.sign != b.sign || a.index != b.index)
                throw std::logic_error("octonion table copies disagree");
            t.sign[r][s] = a.sign;
            t.index[r][s] = a.index;
        }
    }
    return t;
}

const Tables& tables() {
    static const Tables t = build_and_check_tables();
    return t;
}

}  // namespace

const std::array<std::array<signed char, 8>, 8>& basis_sign() { return tables().sign; }
const std::array<std::array<unsigned char, 8>, 8>& basis_index() { return tables().index; }

Octonion mul(const Octonion& a, const Octonion& b) {
    const Tables& t = tables();
    Octonion r;
    for (int p = 0; p < 8; ++p) {
        if (a.c[p] == 0) continue;
        for (int q = 0; q < 8; ++q) {
            if (b.c[q] == 0) continue;
            r.c[t.index[p][q]] += t.sign[p][q] * a.c[p] * b.c[q];
        }
    }
    return r;
}

Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
    return mul(mul(a, b), c) - mul(a, mul(b, c));
}

CayleyProduct cayley_product_im(const Octonion& a, const Octonion& b, const Octonion& c,
                                const Octonion& d, double tol) {
    // The product is alternating for orthogonal arguments, so its multilinear
    // extension is det(coefficients) times the value on an orthonormal basis
    // of the span.
    VecT<double, 8> w[4];
    const Octonion* in[4] = {&a, &b, &c, &d};
    for (int m = 0; m < 4; ++m) {
        w[m].n = 8;
        for (int t = 0; t < 8; ++t) w[m][t] = in[m]->c[t];
    }
    double pivots[4];
    if (!gram_schmidt(w, 4, tol, pivots)) return {ImOctonion{}, true};

    Octonion q[4];
    for (int m = 0; m < 4; ++m)
        for (int t = 0; t < 8; ++t) q[m].c[t] = w[m][t];

    Octonion prod = mul(conj(q[0]), mul(q[1], mul(conj(q[2]), q[3])));
    double scale = pivots[0] * pivots[1] * pivots[2] * pivots[3];
    return {ImOctonion(scale * prod), false};
}

Octonion clifford_gamma(const Octonion& alpha, const Octonion& s) {
    double out = 0, all = 0;
    for (int t = 0; t < 8; ++t) {
        all += alpha.c[t] * alpha.c[t];
        if (t < 4) out += alpha.c[t] * alpha.c[t];
    }
    if (out > 1e-24 * (all > 0 ? all : 1))
        throw std::invalid_argument("clifford_gamma: 1-form has a component outside He");
    return mul(alpha, s);
}

}  // namespace calib
