#include "calib/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace calib {

namespace {

void check_tag(const SplitVector& v, Bundle tag, int n) {
    if (v.tag != tag || v.base_dim != n || v.fibre_dim != fibre_dim_of(tag, n))
        throw std::invalid_argument("split vector has wrong bundle tag or dimension");
}

// Pack a split vector into a flat coordinate vector (base first, fibre after).
VecT<double, 8> flatten(const SplitVector& v) {
    VecT<double, 8> w(v.base_dim + v.fibre_dim);
    for (int i = 0; i < v.base_dim; ++i) w[i] = v.base[i];
    for (int i = 0; i < v.fibre_dim; ++i) w[v.base_dim + i] = v.fibre[i];
    return w;
}

SplitVector unflatten(Bundle tag, int n, const VecT<double, 8>& w) {
    SplitVector v = make_split(tag, n);
    for (int i = 0; i < v.base_dim; ++i) v.base[i] = w[i];
    for (int i = 0; i < v.fibre_dim; ++i) v.fibre[i] = w[v.base_dim + i];
    return v;
}

struct PhiTerm {
    double sign;
    int a, b, c;  // coordinate indices: 0..3 base, 4..6 fibre
};

// phi = f1^f2^f3 + f1^(b1^b2 - b3^b4) + f2^(b1^b3 - b4^b2) + f3^(b1^b4 - b2^b3)
// with fibre coordinates 4,5,6.  The self-dual variant swaps the sign pattern.
const PhiTerm* phi_terms(DualityVariant variant) {
    static const PhiTerm minus[7] = {
        {+1, 4, 5, 6}, {+1, 4, 0, 1}, {-1, 4, 2, 3}, {+1, 5, 0, 2},
        {-1, 5, 3, 1}, {+1, 6, 0, 3}, {-1, 6, 1, 2},
    };
    static const PhiTerm plus[7] = {
        {+1, 4, 5, 6}, {-1, 4, 0, 1}, {-1, 4, 2, 3}, {-1, 5, 0, 2},
        {-1, 5, 3, 1}, {-1, 6, 0, 3}, {-1, 6, 1, 2},
    };
    return variant == DualityVariant::anti_self_dual ? minus : plus;
}

double coord(const SplitVector& v, int idx) {
    return idx < 4 ? v.base[idx] : v.fibre[idx - 4];
}

}  // namespace

int fibre_dim_of(Bundle tag, int n) {
    switch (tag) {
        case Bundle::cotangent: return n;
        case Bundle::asd4: return 3;
        case Bundle::spinor_minus4: return 4;
        case Bundle::spinor3: return 4;
    }
    return 0;
}

SplitVector make_split(Bundle tag, int n) {
    SplitVector v;
    v.tag = tag;
    v.base_dim = (tag == Bundle::cotangent) ? n : (tag == Bundle::spinor3 ? 3 : 4);
    v.fibre_dim = fibre_dim_of(tag, n);
    v.base = Vec4(v.base_dim);
    v.fibre = Vec4(v.fibre_dim);
    return v;
}

double omega_eval(const SplitVector& u, const SplitVector& v) {
    if (u.tag != Bundle::cotangent || v.tag != Bundle::cotangent || u.base_dim != v.base_dim)
        throw std::invalid_argument("omega_eval: mismatched cotangent vectors");
    double s = 0;
    for (int k = 0; k < u.base_dim; ++k) s += u.base[k] * v.fibre[k] - v.base[k] * u.fibre[k];
    return s;
}

std::complex<double> big_omega_eval(const std::vector<SplitVector>& vectors) {
    const int n = static_cast<int>(vectors.size());
    if (n < 1 || n > 4) throw std::invalid_argument("big_omega_eval: need 1..4 vectors");
    for (const auto& v : vectors) check_tag(v, Bundle::cotangent, n);

    // det of Z_{jk} = (base^j + i fibre_j)(vector_k), by Gaussian elimination.
    std::complex<double> z[4][4];
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            z[j][k] = std::complex<double>(vectors[k].base[j], vectors[k].fibre[j]);

    std::complex<double> det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(z[r][col]) > std::abs(z[piv][col])) piv = r;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(z[piv][c], z[col][c]);
            det = -det;
        }
        if (z[col][col] == std::complex<double>(0, 0)) return 0;
        det *= z[col][col];
        for (int r = col + 1; r < n; ++r) {
            std::complex<double> f = z[r][col] / z[col][col];
            for (int c = col; c < n; ++c) z[r][c] -= f * z[col][c];
        }
    }
    return det;
}

double phi_eval(const SplitVector& u, const SplitVector& v, const SplitVector& w,
                DualityVariant variant) {
    check_tag(u, Bundle::asd4, 4);
    check_tag(v, Bundle::asd4, 4);
    check_tag(w, Bundle::asd4, 4);
    const PhiTerm* terms = phi_terms(variant);
    double s = 0;
    for (int t = 0; t < 7; ++t) {
        const PhiTerm& term = terms[t];
        std::array<std::array<double, 3>, 3> m{};
        const SplitVector* args[3] = {&u, &v, &w};
        for (int col = 0; col < 3; ++col) {
            m[0][col] = coord(*args[col], term.a);
            m[1][col] = coord(*args[col], term.b);
            m[2][col] = coord(*args[col], term.c);
        }
        s += term.sign * det3(m);
    }
    return s;
}

SlagDefect is_special_lagrangian(const std::vector<SplitVector>& vectors, Phase phase,
                                 double tol) {
    const int n = static_cast<int>(vectors.size());
    SlagDefect out;
    std::vector<VecT<double, 8>> w(vectors.size());
    for (int k = 0; k < n; ++k) w[k] = flatten(vectors[k]);
    if (!gram_schmidt(w.data(), n, tol)) {
        out.degenerate = true;
        return out;
    }
    std::vector<SplitVector> q(vectors.size());
    for (int k = 0; k < n; ++k) q[k] = unflatten(Bundle::cotangent, n, w[k]);

    double sum = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            double val = omega_eval(q[a], q[b]);
            sum += val * val;
            out.omega_max = std::max(out.omega_max, std::abs(val));
        }
    out.omega_defect = std::sqrt(sum);

    std::complex<double> om = big_omega_eval(q);
    out.im_defect = std::abs(std::imag(std::exp(std::complex<double>(0, -phase.theta)) * om));
    return out;
}

namespace {

SpanDefect defect_from_values(const double* vals, int count) {
    SpanDefect out;
    double sum = 0;
    for (int t = 0; t < count; ++t) {
        sum += vals[t] * vals[t];
        out.max_abs = std::max(out.max_abs, std::abs(vals[t]));
    }
    out.defect = std::sqrt(sum);
    return out;
}

}  // namespace

SpanDefect is_coassociative(const std::vector<SplitVector>& vectors, double tol,
                            DualityVariant variant) {
    if (vectors.size() != 4) throw std::invalid_argument("is_coassociative: need 4 vectors");
    std::vector<VecT<double, 8>> w(4);
    for (int k = 0; k < 4; ++k) w[k] = flatten(vectors[k]);
    if (!gram_schmidt(w.data(), 4, tol)) return {0, 0, true};
    SplitVector q[4];
    for (int k = 0; k < 4; ++k) q[k] = unflatten(Bundle::asd4, 4, w[k]);

    double vals[4];
    int idx = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c) vals[idx++] = phi_eval(q[a], q[b], q[c], variant);
    return defect_from_values(vals, 4);
}

SpanDefect is_associative(const std::vector<SplitVector>& vectors, double tol) {
    if (vectors.size() != 3) throw std::invalid_argument("is_associative: need 3 vectors");
    std::vector<VecT<double, 8>> w(3);
    for (int k = 0; k < 3; ++k) w[k] = flatten(vectors[k]);
    if (!gram_schmidt(w.data(), 3, tol)) return {0, 0, true};
    Octonion q[3];
    for (int k = 0; k < 3; ++k) q[k] = to_im_octonion(unflatten(Bundle::asd4, 4, w[k]));

    Octonion assoc = associator(q[0], q[1], q[2]);
    SpanDefect out;
    out.defect = norm(assoc);
    out.max_abs = out.defect;
    return out;
}

SpanDefect is_cayley(const std::vector<Octonion>& vectors, double tol) {
    if (vectors.size() != 4) throw std::invalid_argument("is_cayley: need 4 vectors");
    VecT<double, 8> w[4];
    for (int k = 0; k < 4; ++k) {
        w[k].n = 8;
        for (int t = 0; t < 8; ++t) w[k][t] = vectors[k].c[t];
    }
    if (!gram_schmidt(w, 4, tol)) return {0, 0, true};
    Octonion q[4];
    for (int k = 0; k < 4; ++k)
        for (int t = 0; t < 8; ++t) q[k].c[t] = w[k][t];

    CayleyProduct p = cayley_product_im(q[0], q[1], q[2], q[3], tol);
    SpanDefect out;
    out.degenerate = p.degenerate;
    out.defect = norm(p.value);
    out.max_abs = out.defect;
    return out;
}

Octonion to_im_octonion(const SplitVector& v) {
    check_tag(v, Bundle::asd4, 4);
    Octonion o;
    o.c[1] = v.fibre[0];
    o.c[2] = v.fibre[1];
    o.c[3] = v.fibre[2];
    for (int i = 0; i < 4; ++i) o.c[4 + i] = v.base[i];
    return o;
}

SplitVector from_im_octonion(const Octonion& o) {
    SplitVector v = make_split(Bundle::asd4, 4);
    v.fibre[0] = o.c[1];
    v.fibre[1] = o.c[2];
    v.fibre[2] = o.c[3];
    for (int i = 0; i < 4; ++i) v.base[i] = o.c[4 + i];
    return v;
}

}  // namespace calib
