#include "calib/immersion.hpp"

#include "calib/jet.hpp"

#include <algorithm>
#include <cmath>

namespace calib {

bool DomainBox::contains(double u, double v) const {
    if (u < u0 || u > u1 || v < v0 || v > v1) return false;
    if (keep_if_positive) {
        try {
            if (!(keep_if_positive->eval(u, v) > 0)) return false;
        } catch (const EvalDomainError&) {
            return false;
        }
    }
    return true;
}

Immersion::Immersion(int p, int n, std::vector<Expr> components, DomainBox domain)
    : p_(p), n_(n), components_(std::move(components)), domain_(std::move(domain)) {
    if (p_ < 1 || p_ > 2) throw std::invalid_argument("immersion: base dimension must be 1 or 2");
    if (n_ < 3 || n_ > 4) throw std::invalid_argument("immersion: ambient dimension must be 3 or 4");
    if (static_cast<int>(components_.size()) != n_)
        throw std::invalid_argument("immersion: component count must match ambient dimension");
}

ImmersionJet Immersion::eval(ParamPoint pt, DiffMode mode) const {
    ImmersionJet out;
    out.p = p_;
    out.n = n_;
    out.x = Vec4(n_);
    if (mode == DiffMode::jet) {
        for (int c = 0; c < n_; ++c) {
            Jet2 j = components_[c].eval_jet2(pt.u, pt.v);
            out.x[c] = j.v;
            out.d1[c][0] = j.du;
            out.d1[c][1] = j.dv;
            out.d2[c][0][0] = j.huu;
            out.d2[c][0][1] = out.d2[c][1][0] = j.huv;
            out.d2[c][1][1] = j.hvv;
        }
        if (p_ == 1)
            for (int c = 0; c < n_; ++c)
                out.d1[c][1] = out.d2[c][0][1] = out.d2[c][1][0] = out.d2[c][1][1] = 0;
        return out;
    }
    // Central differences on component values, step tuned for second
    // derivatives in double precision.
    const double h = 1e-4;
    for (int c = 0; c < n_; ++c) {
        const Expr& f = components_[c];
        auto at = [&](double du, double dv) { return f.eval(pt.u + du, pt.v + dv); };
        double f0 = at(0, 0);
        out.x[c] = f0;
        out.d1[c][0] = (at(h, 0) - at(-h, 0)) / (2 * h);
        out.d2[c][0][0] = (at(h, 0) - 2 * f0 + at(-h, 0)) / (h * h);
        if (p_ == 2) {
            out.d1[c][1] = (at(0, h) - at(0, -h)) / (2 * h);
            out.d2[c][1][1] = (at(0, h) - 2 * f0 + at(0, -h)) / (h * h);
            out.d2[c][0][1] = out.d2[c][1][0] =
                (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
        }
    }
    return out;
}

Immersion lift_to_r4(const Immersion& imm) {
    if (imm.n() != 3) throw std::invalid_argument("lift_to_r4: expected an immersion in R^3");
    std::vector<Expr> comps;
    comps.push_back(parse("0"));
    for (const Expr& c : imm.components()) comps.push_back(c);
    return Immersion(imm.p(), 4, std::move(comps), imm.domain());
}

namespace {

template <typename T>
struct FrameCore {
    VecT<T, 4> e[2];
    VecT<T, 4> nu[3];
    T pullback[2][2];
    int q = 0;
};

// Tangent frame by Gram-Schmidt on the Jacobian columns (tracking pullback
// coefficients), normal frame by projecting ambient basis vectors in index
// order, last normal flipped so that (e, nu) is positively oriented.
// Branch decisions use only value parts, so the computation is valid for
// dual-number scalars as long as the pivots stay away from the tolerance.
template <typename T>
FrameCore<T> frame_core(int p, int n, const VecT<T, 4>* jac_cols, double pivot_tol) {
    FrameCore<T> fc;
    for (auto& row : fc.pullback) row[0] = row[1] = T(0);

    T r1 = norm(jac_cols[0]);
    if (!(value_of(r1) > pivot_tol)) throw RankError("frames: rank-deficient Jacobian");
    T inv1 = T(1) / r1;
    fc.e[0] = jac_cols[0];
    fc.e[0] *= inv1;
    fc.pullback[0][0] = inv1;

    if (p == 2) {
        T c = dot(jac_cols[1], fc.e[0]);
        VecT<T, 4> w = jac_cols[1];
        for (int t = 0; t < n; ++t) w[t] = w[t] - c * fc.e[0][t];
        T r2 = norm(w);
        if (!(value_of(r2) > pivot_tol)) throw RankError("frames: rank-deficient Jacobian");
        T inv2 = T(1) / r2;
        fc.e[1] = w;
        fc.e[1] *= inv2;
        fc.pullback[1][0] = T(0) - c * inv1 * inv2;
        fc.pullback[1][1] = inv2;
    }

    int q = 0;
    for (int a = 0; a < n && q < n - p; ++a) {
        VecT<T, 4> w(n);
        w[a] = T(1);
        for (int i = 0; i < p; ++i) {
            T c = dot(w, fc.e[i]);
            for (int t = 0; t < n; ++t) w[t] = w[t] - c * fc.e[i][t];
        }
        for (int j = 0; j < q; ++j) {
            T c = dot(w, fc.nu[j]);
            for (int t = 0; t < n; ++t) w[t] = w[t] - c * fc.nu[j][t];
        }
        T r = norm(w);
        if (!(value_of(r) > pivot_tol)) continue;
        T inv = T(1) / r;
        w *= inv;
        fc.nu[q++] = w;
    }
    if (q != n - p) throw RankError("frames: could not complete the normal frame");
    fc.q = q;

    VecT<double, 4> rows[4];
    for (int i = 0; i < p; ++i) {
        rows[i] = VecT<double, 4>(n);
        for (int t = 0; t < n; ++t) rows[i][t] = value_of(fc.e[i][t]);
    }
    for (int j = 0; j < q; ++j) {
        rows[p + j] = VecT<double, 4>(n);
        for (int t = 0; t < n; ++t) rows[p + j][t] = value_of(fc.nu[j][t]);
    }
    if (det_rows(rows, n) < 0) fc.nu[q - 1] *= T(-1);
    return fc;
}

}  // namespace

FramePacket frames(const Immersion& imm, ParamPoint pt, DiffMode mode, double pivot_tol) {
    ImmersionJet jet = imm.eval(pt, mode);
    const int p = imm.p(), n = imm.n();

    VecT<double, 4> cols[2];
    for (int a = 0; a < p; ++a) {
        cols[a] = VecT<double, 4>(n);
        for (int c = 0; c < n; ++c) cols[a][c] = jet.d1[c][a];
    }
    FrameCore<double> fc = frame_core<double>(p, n, cols, pivot_tol);

    FramePacket fp;
    fp.point = pt;
    fp.p = p;
    fp.n = n;
    fp.q = fc.q;
    fp.x = jet.x;
    for (int i = 0; i < p; ++i) fp.e[i] = fc.e[i];
    for (int j = 0; j < fc.q; ++j) fp.nu[j] = fc.nu[j];
    std::copy(&jet.d1[0][0], &jet.d1[0][0] + 8, &fp.d1[0][0]);
    std::copy(&jet.d2[0][0][0], &jet.d2[0][0][0] + 16, &fp.d2[0][0][0]);
    for (int i = 0; i < p; ++i)
        for (int a = 0; a < p; ++a) fp.pullback[i][a] = fc.pullback[i][a];
    return fp;
}

Sff second_fundamental_form(const FramePacket& fp) {
    Sff sff;
    sff.p = fp.p;
    sff.q = fp.q;
    for (int i = 0; i < fp.p; ++i) {
        for (int j = i; j < fp.p; ++j) {
            // second derivative of x along (e~_i, e~_j)
            Vec4 dd(fp.n);
            for (int c = 0; c < fp.n; ++c) {
                double s = 0;
                for (int a = 0; a < fp.p; ++a)
                    for (int b = 0; b < fp.p; ++b)
                        s += fp.pullback[i][a] * fp.pullback[j][b] * fp.d2[c][a][b];
                dd[c] = s;
            }
            for (int k = 0; k < fp.q; ++k) {
                double val = -dot(dd, fp.nu[k]);
                sff.A[k][i][j] = sff.A[k][j][i] = val;
            }
        }
    }
    return sff;
}

MeanCurvature mean_curvature(const FramePacket& fp, const Sff& sff) {
    MeanCurvature mc;
    mc.ambient = Vec4(fp.n);
    double n2 = 0;
    for (int k = 0; k < sff.q; ++k) {
        double t = sff.trace(k);
        mc.coeff[k] = t;
        n2 += t * t;
        for (int c = 0; c < fp.n; ++c) mc.ambient[c] += t * fp.nu[k][c];
    }
    mc.norm = std::sqrt(n2);
    return mc;
}

bool is_minimal(const FramePacket& fp, const Sff& sff, double tol) {
    return mean_curvature(fp, sff).norm < tol;
}

namespace {

double odd_symmetric_max(const Sff& sff, const double* dir) {
    // A^nu for nu = sum_k dir[k] nu_k
    double m[3][3] = {};
    for (int i = 0; i < sff.p; ++i)
        for (int j = 0; j < sff.p; ++j)
            for (int k = 0; k < sff.q; ++k) m[i][j] += dir[k] * sff.A[k][i][j];

    double tr = 0;
    for (int i = 0; i < sff.p; ++i) tr += m[i][i];
    double worst = std::abs(tr);
    if (sff.p == 3) {
        std::array<std::array<double, 3>, 3> mm{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mm[i][j] = m[i][j];
        worst = std::max(worst, std::abs(det3(mm)));
    }
    return worst;
}

}  // namespace

double austere_defect(const Sff& sff, int normal_samples) {
    if (sff.p > 3) throw std::invalid_argument("austere_defect: p <= 3 only");
    double worst = 0;
    if (sff.q == 1) {
        for (double s : {1.0, -1.0}) {
            double dir[3] = {s, 0, 0};
            worst = std::max(worst, odd_symmetric_max(sff, dir));
        }
        return worst;
    }
    for (int s = 0; s < normal_samples; ++s) {
        double th = 2 * M_PI * s / normal_samples;
        double dir[3] = {std::cos(th), std::sin(th), 0};
        worst = std::max(worst, odd_symmetric_max(sff, dir));
    }
    // include the analytic maximiser of the (linear) trace term, so that for
    // p <= 2 the defect equals |H| exactly
    double dir[3] = {sff.trace(0), sff.trace(1), sff.q > 2 ? sff.trace(2) : 0};
    double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    if (n > 0) {
        for (double& d : dir) d /= n;
        worst = std::max(worst, odd_symmetric_max(sff, dir));
    }
    return worst;
}

IsotropyReport isotropy_report(const FramePacket& fp, const Sff& sff, double tol) {
    if (fp.p != 2 || fp.n != 4)
        throw std::invalid_argument("isotropy_report: needs a surface in R^4");
    IsotropyReport rep;

    MeanCurvature mc = mean_curvature(fp, sff);
    rep.H = mc.ambient;

    // W = W1 + i W2 with W1 = (A^k_11 - A^k_22) nu_k, W2 = -2 A^k_12 nu_k.
    rep.W1 = Vec4(fp.n);
    rep.W2 = Vec4(fp.n);
    double w1c[2], w2c[2];
    for (int k = 0; k < 2; ++k) {
        w1c[k] = sff.A[k][0][0] - sff.A[k][1][1];
        w2c[k] = -2 * sff.A[k][0][1];
        for (int c = 0; c < 4; ++c) {
            rep.W1[c] += w1c[k] * fp.nu[k][c];
            rep.W2[c] += w2c[k] * fp.nu[k][c];
        }
    }
    double w11 = w1c[0] * w1c[0] + w1c[1] * w1c[1];
    double w22 = w2c[0] * w2c[0] + w2c[1] * w2c[1];
    double w12 = w1c[0] * w2c[0] + w1c[1] * w2c[1];
    rep.Q = std::complex<double>(w11 - w22, 2 * w12);

    // A^{J nu} = +-J A^nu with J nu_1 = nu_2 and J = [[0,-1],[1,0]] on the
    // tangent frame: equivalent to A^2 = +-J A^1.
    const double a11 = sff.A[0][0][0], a12 = sff.A[0][0][1], a22 = sff.A[0][1][1];
    const double b11 = sff.A[1][0][0], b12 = sff.A[1][0][1], b22 = sff.A[1][1][1];
    auto frob = [](double m11, double m12, double m21, double m22) {
        return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22);
    };
    // J A^1 = [[-a12, -a22], [a11, a12]]
    rep.plus_residual = frob(b11 + a12, b12 + a22, b12 - a11, b22 - a12);
    // -J A^1 = [[a12, a22], [-a11, -a12]]
    rep.minus_residual = frob(b11 - a12, b12 - a22, b12 + a11, b22 + a12);

    double scale = std::max(1.0, frob(a11, a12, a12, a22) + frob(b11, b12, b12, b22));
    rep.plus_ok = rep.plus_residual < tol * scale;
    rep.minus_ok = rep.minus_residual < tol * scale;
    return rep;
}

std::array<double, 2> minimal_graph_residual(const Expr& f1, const Expr& f2, ParamPoint pt) {
    Jet2 a = f1.eval_jet2(pt.u, pt.v);
    Jet2 b = f2.eval_jet2(pt.u, pt.v);
    double g11 = 1 + a.du * a.du + b.du * b.du;
    double g22 = 1 + a.dv * a.dv + b.dv * b.dv;
    double g12 = a.du * a.dv + b.du * b.dv;
    return {g22 * a.huu + g11 * a.hvv - 2 * g12 * a.huv,
            g22 * b.huu + g11 * b.hvv - 2 * g12 * b.huv};
}

FrameField frame_field(const Immersion& imm, ParamPoint pt, double pivot_tol) {
    ImmersionJet jet = imm.eval(pt, DiffMode::jet);
    const int p = imm.p(), n = imm.n();

    VecT<Dual2, 4> cols[2];
    for (int a = 0; a < p; ++a) {
        cols[a] = VecT<Dual2, 4>(n);
        for (int c = 0; c < n; ++c)
            cols[a][c] = Dual2(jet.d1[c][a], jet.d2[c][a][0], jet.d2[c][a][1]);
    }
    FrameCore<Dual2> fc = frame_core<Dual2>(p, n, cols, pivot_tol);

    FrameField ff;
    ff.fp = frames(imm, pt, DiffMode::jet, pivot_tol);
    for (int i = 0; i < p; ++i) {
        for (int a = 0; a < 2; ++a) ff.de[a][i] = Vec4(n);
        for (int c = 0; c < n; ++c) {
            ff.de[0][i][c] = fc.e[i][c].du;
            ff.de[1][i][c] = fc.e[i][c].dv;
        }
    }
    for (int j = 0; j < fc.q; ++j) {
        for (int a = 0; a < 2; ++a) ff.dnu[a][j] = Vec4(n);
        for (int c = 0; c < n; ++c) {
            ff.dnu[0][j][c] = fc.nu[j][c].du;
            ff.dnu[1][j][c] = fc.nu[j][c].dv;
        }
    }
    return ff;
}

std::vector<ParamPoint> sample_domain(const Immersion& imm, int count,
                                      unsigned long long seed) {
    auto halton = [](unsigned long long idx, int base) {
        double f = 1, r = 0;
        while (idx > 0) {
            f /= base;
            r += f * static_cast<double>(idx % static_cast<unsigned long long>(base));
            idx /= static_cast<unsigned long long>(base);
        }
        return r;
    };
    const DomainBox& box = imm.domain();
    std::vector<ParamPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    unsigned long long idx = 1 + seed;
    long long budget = static_cast<long long>(count) * 10000 + 10000;
    while (static_cast<int>(pts.size()) < count && budget-- > 0) {
        double u = box.u0 + (box.u1 - box.u0) * halton(idx, 2);
        double v = (imm.p() == 2) ? box.v0 + (box.v1 - box.v0) * halton(idx, 3) : 0.0;
        ++idx;
        if (imm.p() == 2 && !box.contains(u, v)) continue;
        if (imm.p() == 1 && !box.contains(u, box.v0)) continue;
        pts.push_back({u, v});
    }
    if (static_cast<int>(pts.size()) < count)
        throw std::runtime_error("sample_domain: domain is empty or nearly empty");
    return pts;
}

}  // namespace calib
