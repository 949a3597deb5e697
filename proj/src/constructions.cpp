#include "calib/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace calib {

std::string to_string(ConstructionKind kind) {
    switch (kind) {
        case ConstructionKind::conormal: return "conormal";
        case ConstructionKind::coassociative_F: return "coassociative_F";
        case ConstructionKind::associative_E: return "associative_E";
        case ConstructionKind::cayley_plus: return "cayley_plus";
        case ConstructionKind::cayley_minus: return "cayley_minus";
        case ConstructionKind::spinor3_plus: return "spinor3_plus";
        case ConstructionKind::spinor3_minus: return "spinor3_minus";
    }
    return "?";
}

std::optional<ConstructionKind> construction_from_string(const std::string& name) {
    for (ConstructionKind k :
         {ConstructionKind::conormal, ConstructionKind::coassociative_F,
          ConstructionKind::associative_E, ConstructionKind::cayley_plus,
          ConstructionKind::cayley_minus, ConstructionKind::spinor3_plus,
          ConstructionKind::spinor3_minus})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

TwoForm wedge(const Vec4& a, const Vec4& b) {
    TwoForm f;
    for (int mu = 0; mu < 4; ++mu)
        for (int nv = 0; nv < 4; ++nv) f.m[mu][nv] = a[mu] * b[nv] - a[nv] * b[mu];
    return f;
}

double form_inner(const TwoForm& a, const TwoForm& b) {
    double s = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nv = mu + 1; nv < 4; ++nv) s += a.m[mu][nv] * b.m[mu][nv];
    return s;
}

namespace {

TwoForm sub(const TwoForm& a, const TwoForm& b) {
    TwoForm f;
    for (int mu = 0; mu < 4; ++mu)
        for (int nv = 0; nv < 4; ++nv) f.m[mu][nv] = a.m[mu][nv] - b.m[mu][nv];
    return f;
}

TwoForm add(const TwoForm& a, const TwoForm& b) {
    TwoForm f;
    for (int mu = 0; mu < 4; ++mu)
        for (int nv = 0; nv < 4; ++nv) f.m[mu][nv] = a.m[mu][nv] + b.m[mu][nv];
    return f;
}

AsdFrame asd_from_quadruple(const Vec4& f1, const Vec4& f2, const Vec4& f3, const Vec4& f4) {
    AsdFrame out;
    out.omega[0] = sub(wedge(f1, f2), wedge(f3, f4));
    out.omega[1] = sub(wedge(f1, f3), wedge(f4, f2));
    out.omega[2] = sub(wedge(f1, f4), wedge(f2, f3));
    return out;
}

}  // namespace

AsdFrame asd_frame(const FramePacket& fp) {
    if (fp.p != 2 || fp.n != 4)
        throw std::invalid_argument("asd_frame: needs a surface frame in R^4");
    return asd_from_quadruple(fp.e[0], fp.e[1], fp.nu[0], fp.nu[1]);
}

AsdFrame standard_asd_basis() {
    Vec4 basis[4];
    for (int i = 0; i < 4; ++i) {
        basis[i] = Vec4(4);
        basis[i][i] = 1;
    }
    return asd_from_quadruple(basis[0], basis[1], basis[2], basis[3]);
}

AsdRotation asd_rotation(const FramePacket& fp) {
    AsdFrame frame = asd_frame(fp);
    AsdFrame std_basis = standard_asd_basis();
    AsdRotation rot;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            rot.rot[k][l] = form_inner(frame.omega[k], std_basis.omega[l]) / 2;
    return rot;
}

std::vector<SplitVector> conormal_tangent_basis(const FramePacket& fp, const Sff& sff,
                                                const double* t) {
    const int p = fp.p, q = fp.q, n = fp.n;
    std::vector<SplitVector> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < p; ++i) {
        SplitVector sv = make_split(Bundle::cotangent, n);
        sv.base[i] = 1;
        for (int l = 0; l < p; ++l) {
            double a = 0;
            for (int k = 0; k < q; ++k) a += t[k] * sff.A[k][i][l];
            sv.fibre[l] = a;
        }
        out.push_back(sv);
    }
    for (int j = 0; j < q; ++j) {
        SplitVector sv = make_split(Bundle::cotangent, n);
        sv.fibre[p + j] = 1;
        out.push_back(sv);
    }
    return out;
}

AsdDerivatives asd_covariant_derivatives(const Sff& sff) {
    AsdDerivatives d;
    for (int i = 0; i < 2; ++i) {
        const double a_i1 = sff.A[0][i][0], a_i2 = sff.A[0][i][1];
        const double b_i1 = sff.A[1][i][0], b_i2 = sff.A[1][i][1];
        d.coeff[i][0][1] = b_i1 - a_i2;
        d.coeff[i][0][2] = -a_i1 - b_i2;
        d.coeff[i][1][0] = a_i2 - b_i1;
        d.coeff[i][2][0] = b_i2 + a_i1;
    }
    return d;
}

AsdDerivativesJet asd_covariant_derivatives_jet(const FrameField& ff) {
    const FramePacket& fp = ff.fp;
    AsdFrame frame = asd_frame(fp);
    AsdDerivativesJet out;

    for (int a = 0; a < 2; ++a) {
        // parameter derivatives of the three 2-forms
        TwoForm dw[3];
        dw[0] = sub(add(wedge(ff.de[a][0], fp.e[1]), wedge(fp.e[0], ff.de[a][1])),
                    add(wedge(ff.dnu[a][0], fp.nu[1]), wedge(fp.nu[0], ff.dnu[a][1])));
        dw[1] = sub(add(wedge(ff.de[a][0], fp.nu[0]), wedge(fp.e[0], ff.dnu[a][0])),
                    add(wedge(ff.dnu[a][1], fp.e[1]), wedge(fp.nu[1], ff.de[a][1])));
        dw[2] = sub(add(wedge(ff.de[a][0], fp.nu[1]), wedge(fp.e[0], ff.dnu[a][1])),
                    add(wedge(ff.de[a][1], fp.nu[0]), wedge(fp.e[1], ff.dnu[a][0])));
        for (int i = 0; i < 2; ++i) {
            double pb = fp.pullback[i][a];
            if (pb == 0) continue;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    out.coeff[i][k][l] += pb * form_inner(dw[k], frame.omega[l]) / 2;
        }
    }
    for (int i = 0; i < 2; ++i) {
        double tr = 0, nr = 0;
        for (int a = 0; a < 2; ++a) {
            tr += fp.pullback[i][a] * dot(ff.de[a][0], fp.e[1]);
            nr += fp.pullback[i][a] * dot(ff.dnu[a][0], fp.nu[1]);
        }
        out.tangent_rate[i] = tr;
        out.normal_rate[i] = nr;
    }
    return out;
}

std::vector<SplitVector> coassociative_tangent_basis(const FramePacket& fp, const Sff& sff,
                                                     double t2, double t3) {
    if (fp.p != 2 || fp.n != 4)
        throw std::invalid_argument("coassociative_tangent_basis: needs a surface in R^4");
    // A^nu and A^{nu-perp} for nu = t2 nu_1 + t3 nu_2, nu-perp = -t3 nu_1 + t2 nu_2
    auto a_nu = [&](int i, int j) { return t2 * sff.A[0][i][j] + t3 * sff.A[1][i][j]; };
    auto a_perp = [&](int i, int j) { return -t3 * sff.A[0][i][j] + t2 * sff.A[1][i][j]; };

    std::vector<SplitVector> out(4, make_split(Bundle::asd4, 4));
    out[0].base[0] = 1;
    out[0].fibre[0] = a_nu(0, 1) - a_perp(0, 0);
    out[1].base[1] = 1;
    out[1].fibre[0] = a_nu(1, 1) - a_perp(0, 1);
    out[2].fibre[1] = 1;
    out[3].fibre[2] = 1;
    return out;
}

std::vector<SplitVector> associative_tangent_basis(const FramePacket& fp, const Sff& sff,
                                                   double t1) {
    if (fp.p != 2 || fp.n != 4)
        throw std::invalid_argument("associative_tangent_basis: needs a surface in R^4");
    AsdDerivatives d = asd_covariant_derivatives(sff);
    std::vector<SplitVector> out(3, make_split(Bundle::asd4, 4));
    for (int i = 0; i < 2; ++i) {
        out[i].base[i] = 1;
        out[i].fibre[1] = t1 * d.coeff[i][0][1];
        out[i].fibre[2] = t1 * d.coeff[i][0][2];
    }
    out[2].fibre[0] = 1;
    return out;
}

Octonion embed_tangent(const Vec4& x) {
    Octonion o;
    for (int c = 0; c < x.n; ++c) o.c[4 + c] = x[c];
    return o;
}

namespace {

// Orthonormal basis (p, p jm) of the complement of span{1, jm} in H; p comes
// from the first of (i, j, k) with a stable orthogonal component.
void minus_eigenbasis(const Octonion& jm, Octonion out[2]) {
    for (int cand = 1; cand <= 3; ++cand) {
        Octonion w = Octonion::unit(cand) - dot(Octonion::unit(cand), jm) * jm;
        double r = norm(w);
        if (r >= 0.5) {
            out[0] = (1.0 / r) * w;
            out[1] = mul(out[0], jm);
            out[1].c[0] = 0;  // real part is -<p, jm> = 0
            return;
        }
    }
    throw std::logic_error("minus_eigenbasis: no stable candidate (jm not a unit imaginary?)");
}

SpinorEigenbasis eigenbasis_from_jm(const Octonion& jm) {
    SpinorEigenbasis basis;
    basis.jm = jm;
    basis.q_plus[0] = Octonion::one();
    basis.q_plus[1] = jm;
    minus_eigenbasis(jm, basis.q_minus);
    return basis;
}

}  // namespace

SpinorEigenbasis spinor_eigenbasis(const FramePacket& fp) {
    if (fp.p != 2 || fp.n != 4)
        throw std::invalid_argument("spinor_eigenbasis: needs a surface frame in R^4");
    Octonion jm = mul(embed_tangent(fp.e[0]), embed_tangent(fp.e[1]));
    jm.c[0] = 0;  // real part is -<e_1, e_2>, zero for an orthonormal frame
    return eigenbasis_from_jm(jm);
}

SpinorEigenbasis curve_spinor_eigenbasis(const FramePacket& fp) {
    if (fp.p != 1 || fp.n != 4)
        throw std::invalid_argument("curve_spinor_eigenbasis: needs a lifted curve frame");
    Octonion jm = mul(Octonion::unit(4), embed_tangent(fp.e[0]));
    jm.c[0] = 0;
    return eigenbasis_from_jm(jm);
}

Octonion apply_r_tangent(const FramePacket& fp, const Octonion& s) {
    return mul(embed_tangent(fp.e[0]), mul(embed_tangent(fp.e[1]), s));
}

Octonion apply_r_normal(const FramePacket& fp, const Octonion& s) {
    // reversed spin orientation on the normal pair (see header)
    return mul(embed_tangent(fp.nu[0]), mul(-embed_tangent(fp.nu[1]), s));
}

namespace {

// grad_{e_k} q_j = (jm/2) (a_k1 g(n1)g(e2) + b_k1 g(n2)g(e2)
//                        + a_k2 g(e1)g(n1) + b_k2 g(e1)g(n2)) q_j
// with a = A^{nu_1}, b = A^{nu_2}; gamma compositions are nested left
// multiplications.
Octonion spinor_derivative(const Sff& sff, int k, const Octonion& e1, const Octonion& e2,
                           const Octonion& n1, const Octonion& n2, const Octonion& jm,
                           const Octonion& q) {
    Octonion s = sff.A[0][k][0] * mul(n1, mul(e2, q)) + sff.A[1][k][0] * mul(n2, mul(e2, q)) +
                 sff.A[0][k][1] * mul(e1, mul(n1, q)) + sff.A[1][k][1] * mul(e1, mul(n2, q));
    return 0.5 * mul(jm, s);
}

std::vector<Octonion> cayley_basis_impl(const Sff& sff, const SpinorEigenbasis& basis,
                                        const Octonion& e1, const Octonion& e2,
                                        const Octonion& n1, const Octonion& n2, SpinorSign sign,
                                        double t1, double t2) {
    const Octonion* q = (sign == SpinorSign::plus) ? basis.q_plus : basis.q_minus;
    std::vector<Octonion> out(4);
    for (int k = 0; k < 2; ++k) {
        Octonion grad = t1 * spinor_derivative(sff, k, e1, e2, n1, n2, basis.jm, q[0]) +
                        t2 * spinor_derivative(sff, k, e1, e2, n1, n2, basis.jm, q[1]);
        out[k] = (k == 0 ? e1 : e2) + grad;
    }
    out[2] = q[0];
    out[3] = q[1];
    return out;
}

}  // namespace

std::vector<Octonion> cayley_tangent_basis(const Sff& sff, SpinorSign sign, double t1,
                                           double t2) {
    // standard identification: e^1=e, e^2=ie, nu^1=je, nu^2=ke, jm=i
    SpinorEigenbasis basis = eigenbasis_from_jm(Octonion::unit(1));
    return cayley_basis_impl(sff, basis, Octonion::unit(4), Octonion::unit(5),
                             Octonion::unit(6), Octonion::unit(7), sign, t1, t2);
}

std::vector<Octonion> cayley_tangent_basis_global(const FramePacket& fp, const Sff& sff,
                                                  const SpinorEigenbasis& basis,
                                                  SpinorSign sign, double t1, double t2) {
    return cayley_basis_impl(sff, basis, embed_tangent(fp.e[0]), embed_tangent(fp.e[1]),
                             embed_tangent(fp.nu[0]), embed_tangent(fp.nu[1]), sign, t1, t2);
}

std::vector<Octonion> cayley_true_tangent_basis(const FramePacket& fp, const Sff& sff,
                                                const SpinorEigenbasis& basis,
                                                SpinorSign sign, double t1, double t2) {
    Octonion e1 = embed_tangent(fp.e[0]), e2 = embed_tangent(fp.e[1]);
    Octonion n1 = embed_tangent(fp.nu[0]), n2 = embed_tangent(fp.nu[1]);

    Octonion jmdot[2];
    for (int k = 0; k < 2; ++k) {
        Octonion de1 = -1.0 * (sff.A[0][k][0] * n1 + sff.A[1][k][0] * n2);
        Octonion de2 = -1.0 * (sff.A[0][k][1] * n1 + sff.A[1][k][1] * n2);
        jmdot[k] = mul(de1, e2) + mul(e1, de2);
    }

    const Octonion* q = (sign == SpinorSign::plus) ? basis.q_plus : basis.q_minus;
    Octonion s0 = t1 * q[0] + t2 * q[1];
    std::vector<Octonion> out(4);
    for (int k = 0; k < 2; ++k) {
        Octonion fibre;
        if (sign == SpinorSign::plus)
            fibre = dot(s0, basis.jm) * jmdot[k];
        else
            fibre = -dot(s0, jmdot[k]) * basis.jm;
        out[k] = (k == 0 ? e1 : e2) + fibre;
    }
    out[2] = q[0];
    out[3] = q[1];
    return out;
}

std::vector<Octonion> curve_spinor_tangent_basis(const FramePacket& fp, const Sff& sff,
                                                 const SpinorEigenbasis& basis,
                                                 SpinorSign sign, double t1, double t2) {
    if (fp.p != 1) throw std::invalid_argument("curve_spinor_tangent_basis: p must be 1");
    const Octonion* q = (sign == SpinorSign::plus) ? basis.q_plus : basis.q_minus;
    const Octonion e0 = Octonion::unit(4);

    // grad_{e_1} q_j = (jm/2) sum_k A^k_11 gamma(e^0) gamma(nu^k) q_j
    auto grad_q = [&](const Octonion& qq) {
        Octonion s;
        for (int k = 0; k < fp.q; ++k)
            s = s + sff.A[k][0][0] * mul(e0, mul(embed_tangent(fp.nu[k]), qq));
        return 0.5 * mul(basis.jm, s);
    };

    std::vector<Octonion> out(3);
    out[0] = embed_tangent(fp.e[0]) + t1 * grad_q(q[0]) + t2 * grad_q(q[1]);
    out[1] = q[0];
    out[2] = q[1];
    return out;
}

int fibre_rank(ConstructionKind kind, const Immersion& imm) {
    switch (kind) {
        case ConstructionKind::conormal: return imm.n() - imm.p();
        case ConstructionKind::coassociative_F: return 2;
        case ConstructionKind::associative_E: return 1;
        case ConstructionKind::cayley_plus:
        case ConstructionKind::cayley_minus:
        case ConstructionKind::spinor3_plus:
        case ConstructionKind::spinor3_minus: return 2;
    }
    return 0;
}

namespace {

void check_compatible(const Immersion& imm, ConstructionKind kind) {
    switch (kind) {
        case ConstructionKind::conormal:
            return;  // any p, n
        case ConstructionKind::coassociative_F:
        case ConstructionKind::associative_E:
        case ConstructionKind::cayley_plus:
        case ConstructionKind::cayley_minus:
            if (imm.p() != 2 || imm.n() != 4)
                throw std::invalid_argument(to_string(kind) + " needs a surface in R^4");
            return;
        case ConstructionKind::spinor3_plus:
        case ConstructionKind::spinor3_minus:
            if (imm.n() != 3)
                throw std::invalid_argument(to_string(kind) + " needs a base in R^3");
            return;
    }
}

std::vector<double> fibre_axis(const VerifyConfig& cfg) {
    std::vector<double> v;
    if (cfg.fibre_per_axis == 1) {
        v.push_back((cfg.fibre_min + cfg.fibre_max) / 2);
        return v;
    }
    for (int i = 0; i < cfg.fibre_per_axis; ++i)
        v.push_back(cfg.fibre_min +
                    (cfg.fibre_max - cfg.fibre_min) * i / (cfg.fibre_per_axis - 1));
    return v;
}

// all fibre grid points (rank-dim product grid), row-major
std::vector<std::array<double, 3>> fibre_grid(int rank, const std::vector<double>& axis) {
    std::vector<std::array<double, 3>> pts;
    int total = 1;
    for (int r = 0; r < rank; ++r) total *= static_cast<int>(axis.size());
    pts.reserve(static_cast<std::size_t>(total));
    for (int idx = 0; idx < total; ++idx) {
        std::array<double, 3> t{};
        int rem = idx;
        for (int r = rank - 1; r >= 0; --r) {
            t[r] = axis[static_cast<std::size_t>(rem) % axis.size()];
            rem /= static_cast<int>(axis.size());
        }
        pts.push_back(t);
    }
    return pts;
}

double dist_to_span(const std::vector<Octonion>& span, const Octonion& target, double tol) {
    VecT<double, 8> w[5];
    int m = static_cast<int>(span.size());
    for (int i = 0; i < m; ++i) {
        w[i].n = 8;
        for (int t = 0; t < 8; ++t) w[i][t] = span[i].c[t];
    }
    if (!gram_schmidt(w, m, tol)) return std::numeric_limits<double>::quiet_NaN();
    VecT<double, 8> r;
    r.n = 8;
    for (int t = 0; t < 8; ++t) r[t] = target.c[t];
    for (int i = 0; i < m; ++i) {
        double c = dot(r, w[i]);
        for (int t = 0; t < 8; ++t) r[t] -= c * w[i][t];
    }
    return norm(r);
}

}  // namespace

DefectReport verify(const Immersion& input, ConstructionKind kind, const VerifyConfig& cfg) {
    check_compatible(input, kind);
    const bool spinor3 = kind == ConstructionKind::spinor3_plus ||
                         kind == ConstructionKind::spinor3_minus;
    const Immersion imm = spinor3 ? lift_to_r4(input) : input;

    DefectReport rep;
    rep.kind = kind;
    rep.p = input.p();
    rep.n = input.n();
    rep.mode = cfg.mode;
    rep.seed = cfg.seed;
    rep.tol = cfg.tol;

    const int rank = fibre_rank(kind, input);
    std::vector<ParamPoint> base_pts = sample_domain(imm, cfg.base_samples, cfg.seed);
    std::vector<std::array<double, 3>> fibre = fibre_grid(rank, fibre_axis(cfg));
    const int nb = static_cast<int>(base_pts.size());
    const int nf = static_cast<int>(fibre.size());
    rep.base_count = nb;
    rep.fibre_count = nf;
    if (kind == ConstructionKind::conormal)
        rep.phase_theta = cfg.phase_theta.value_or((imm.n() - imm.p()) * M_PI / 2);

    rep.base.assign(static_cast<std::size_t>(nb), BaseRecord{});
    rep.samples.assign(static_cast<std::size_t>(nb) * static_cast<std::size_t>(nf),
                       SampleRecord{});

    // scratch for coassociative omega^1 bookkeeping
    std::vector<std::array<double, 3>> omega1_rows;
    std::vector<std::array<double, 3>> fibre_std;
    if (kind == ConstructionKind::coassociative_F) {
        omega1_rows.assign(static_cast<std::size_t>(nb), {});
        fibre_std.assign(rep.samples.size(), {});
    }
    std::vector<double> extra_a(rep.samples.size(), 0.0);  // closed-form mismatch etc.
    std::vector<double> extra_b(rep.samples.size(), 0.0);  // dichotomy defects
    std::vector<double> extra_c(rep.samples.size(), 0.0);

    SpinorSign sign = (kind == ConstructionKind::cayley_plus ||
                       kind == ConstructionKind::spinor3_plus)
                          ? SpinorSign::plus
                          : SpinorSign::minus;

    for_each_index(nb, cfg.exec, [&](int bi) {
        const ParamPoint pt = base_pts[static_cast<std::size_t>(bi)];
        FramePacket fp = frames(imm, pt, cfg.mode);
        Sff sff = second_fundamental_form(fp);
        MeanCurvature mc = mean_curvature(fp, sff);

        BaseRecord& br = rep.base[static_cast<std::size_t>(bi)];
        br.u = pt.u;
        br.v = pt.v;
        br.h_norm = mc.norm;
        br.austere = austere_defect(sff);

        if (kind == ConstructionKind::coassociative_F) {
            IsotropyReport iso = isotropy_report(fp, sff, cfg.tol);
            br.q_abs = std::abs(iso.Q);
            br.sign_plus = iso.plus_ok;
            br.sign_minus = iso.minus_ok;
            AsdRotation rot = asd_rotation(fp);
            for (int l = 0; l < 3; ++l)
                omega1_rows[static_cast<std::size_t>(bi)][l] = rot.rot[0][l];
            for (int fi = 0; fi < nf; ++fi) {
                std::size_t si = static_cast<std::size_t>(bi) * nf + fi;
                for (int l = 0; l < 3; ++l)
                    fibre_std[si][l] =
                        fibre[fi][0] * rot.rot[1][l] + fibre[fi][1] * rot.rot[2][l];
            }
        }

        SpinorEigenbasis basis;
        if (kind == ConstructionKind::cayley_plus || kind == ConstructionKind::cayley_minus ||
            (spinor3 && imm.p() == 2))
            basis = spinor_eigenbasis(fp);
        else if (spinor3 && imm.p() == 1)
            basis = curve_spinor_eigenbasis(fp);

        for (int fi = 0; fi < nf; ++fi) {
            std::size_t si = static_cast<std::size_t>(bi) * nf + fi;
            SampleRecord& sr = rep.samples[si];
            sr.u = pt.u;
            sr.v = pt.v;
            for (int r = 0; r < rank; ++r) sr.t[r] = fibre[fi][r];
            const double* t = fibre[fi].data();

            switch (kind) {
                case ConstructionKind::conormal: {
                    std::vector<SplitVector> bb = conormal_tangent_basis(fp, sff, t);
                    SlagDefect sd =
                        is_special_lagrangian(bb, Phase{rep.phase_theta});
                    sr.defect = std::max(sd.omega_defect, sd.im_defect);
                    std::complex<double> om = big_omega_eval(bb);
                    sr.raw = std::abs(
                        std::imag(std::exp(std::complex<double>(0, -rep.phase_theta)) * om));
                    extra_a[si] = sd.omega_defect;
                    extra_b[si] = sd.im_defect;
                    break;
                }
                case ConstructionKind::coassociative_F: {
                    std::vector<SplitVector> bb =
                        coassociative_tangent_basis(fp, sff, t[0], t[1]);
                    SpanDefect d = is_coassociative(bb);
                    sr.defect = d.defect;
                    double vals = 0;
                    for (int a = 0; a < 4; ++a)
                        for (int b = a + 1; b < 4; ++b)
                            for (int c = b + 1; c < 4; ++c) {
                                double val = phi_eval(bb[a], bb[b], bb[c]);
                                vals += val * val;
                            }
                    sr.raw = std::sqrt(vals);
                    break;
                }
                case ConstructionKind::associative_E: {
                    std::vector<SplitVector> bb = associative_tangent_basis(fp, sff, t[0]);
                    SpanDefect d = is_associative(bb);
                    sr.defect = d.defect;
                    Octonion raw = associator(to_im_octonion(bb[0]), to_im_octonion(bb[1]),
                                              to_im_octonion(bb[2]));
                    sr.raw = norm(raw);
                    Octonion cf = (t[0] * -2 * sff.trace(1)) * Octonion::unit(6) +
                                  (t[0] * 2 * sff.trace(0)) * Octonion::unit(7);
                    extra_a[si] = norm(raw - cf);
                    break;
                }
                case ConstructionKind::cayley_plus:
                case ConstructionKind::cayley_minus:
                case ConstructionKind::spinor3_plus:
                case ConstructionKind::spinor3_minus: {
                    std::vector<Octonion> bb;
                    std::vector<Octonion> span;
                    if (imm.p() == 2) {
                        bb = cayley_tangent_basis(sff, sign, t[0], t[1]);
                        span = bb;
                    } else {
                        std::vector<Octonion> curve =
                            curve_spinor_tangent_basis(fp, sff, basis, sign, t[0], t[1]);
                        span.push_back(Octonion::unit(4));
                        for (const Octonion& o : curve) span.push_back(o);
                        bb = span;
                    }
                    SpanDefect d = is_cayley(span);
                    sr.defect = d.defect;
                    CayleyProduct raw =
                        cayley_product_im(span[0], span[1], span[2], span[3]);
                    sr.raw = norm(raw.value);

                    if (kind == ConstructionKind::cayley_plus && imm.p() == 2) {
                        double tra = sff.trace(0), trb = sff.trace(1);
                        Octonion cf =
                            (t[0] / 2 * tra - t[1] / 2 * trb) * Octonion::unit(6) +
                            (t[0] / 2 * trb + t[1] / 2 * tra) * Octonion::unit(7);
                        extra_a[si] = norm(raw.value.o - cf);
                    } else if (kind == ConstructionKind::cayley_minus && imm.p() == 2) {
                        double mag = 0.5 * std::hypot(t[0], t[1]) *
                                     std::hypot(sff.trace(0), sff.trace(1));
                        extra_a[si] = std::abs(sr.raw - mag);
                    }
                    if ((kind == ConstructionKind::cayley_plus ||
                         kind == ConstructionKind::cayley_minus) &&
                        imm.p() == 2) {
                        std::vector<Octonion> true_basis = cayley_true_tangent_basis(
                            fp, sff, basis, sign, t[0], t[1]);
                        if (sign == SpinorSign::plus) {
                            extra_b[si] = dist_to_span(true_basis, Octonion::one(), 1e-12);
                        } else {
                            double c0 = 0;
                            for (const Octonion& o : true_basis)
                                c0 = std::max(c0, std::abs(o.c[0]));
                            extra_b[si] = c0;
                            std::vector<SplitVector> im;
                            for (const Octonion& o : true_basis)
                                im.push_back(from_im_octonion(o));
                            extra_c[si] = is_coassociative(im).defect;
                        }
                    }
                    break;
                }
            }
            br.defect_max = std::max(br.defect_max, sr.defect);
        }
    });

    // serial aggregation
    double sum = 0;
    std::size_t worst_idx = 0;
    for (std::size_t si = 0; si < rep.samples.size(); ++si) {
        const SampleRecord& sr = rep.samples[si];
        sum += sr.defect;
        rep.max_defect = std::max(rep.max_defect, sr.defect);
        rep.max_raw = std::max(rep.max_raw, sr.raw);
        if (sr.defect > rep.samples[worst_idx].defect) worst_idx = si;
    }
    rep.mean_defect = rep.samples.empty() ? 0 : sum / static_cast<double>(rep.samples.size());
    if (!rep.samples.empty()) rep.worst = rep.samples[worst_idx];

    for (const BaseRecord& br : rep.base) {
        rep.h_norm_max = std::max(rep.h_norm_max, br.h_norm);
        rep.austere_max = std::max(rep.austere_max, br.austere);
        if (br.sign_plus) ++rep.sign_plus_count;
        if (br.sign_minus) ++rep.sign_minus_count;
    }

    if (kind == ConstructionKind::conormal) {
        for (double v : extra_a) rep.omega_defect_max = std::max(rep.omega_defect_max, v);
        for (double v : extra_b) rep.im_defect_max = std::max(rep.im_defect_max, v);
    }
    if (kind == ConstructionKind::associative_E || kind == ConstructionKind::cayley_plus ||
        kind == ConstructionKind::cayley_minus) {
        for (double v : extra_a)
            rep.closed_form_mismatch = std::max(rep.closed_form_mismatch, v);
    }
    if (kind == ConstructionKind::cayley_plus) {
        for (double v : extra_b)
            rep.one_in_tangent_defect = std::max(rep.one_in_tangent_defect, v);
    }
    if (kind == ConstructionKind::cayley_minus) {
        for (double v : extra_b) rep.one_component_max = std::max(rep.one_component_max, v);
        for (double v : extra_c)
            rep.im_coassoc_defect_max = std::max(rep.im_coassoc_defect_max, v);
    }
    if (kind == ConstructionKind::coassociative_F) {
        for (std::size_t bi = 0; bi < omega1_rows.size(); ++bi)
            for (int l = 0; l < 3; ++l)
                rep.omega1_constancy = std::max(
                    rep.omega1_constancy, std::abs(omega1_rows[bi][l] - omega1_rows[0][l]));
        for (const auto& s : fibre_std) {
            double proj = 0;
            for (int l = 0; l < 3; ++l) proj += s[l] * omega1_rows[0][l];
            rep.omega1_spread = std::max(rep.omega1_spread, std::abs(proj));
        }
    }

    rep.pass = rep.max_defect < cfg.tol;
    return rep;
}

PointCloud sample_points(const Immersion& input, ConstructionKind kind,
                         const SampleGrid& grid) {
    check_compatible(input, kind);
    const bool spinor3 = kind == ConstructionKind::spinor3_plus ||
                         kind == ConstructionKind::spinor3_minus;
    const Immersion imm = spinor3 ? lift_to_r4(input) : input;
    const int rank = fibre_rank(kind, input);
    const int p = imm.p(), n = imm.n();

    VerifyConfig axis_cfg;
    axis_cfg.fibre_per_axis = grid.fibre_per_axis;
    axis_cfg.fibre_min = grid.fibre_min;
    axis_cfg.fibre_max = grid.fibre_max;
    std::vector<std::array<double, 3>> fibre = fibre_grid(rank, fibre_axis(axis_cfg));
    const int nf = static_cast<int>(fibre.size());

    // base grid over the parameter box (exclusions removed)
    std::vector<ParamPoint> base_pts;
    const DomainBox& box = imm.domain();
    auto axis_points = [](double lo, double hi, int count) {
        std::vector<double> v;
        if (count == 1) {
            v.push_back((lo + hi) / 2);
            return v;
        }
        for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * i / (count - 1));
        return v;
    };
    std::vector<double> us = axis_points(box.u0, box.u1, grid.base_u);
    std::vector<double> vs = (p == 2) ? axis_points(box.v0, box.v1, grid.base_v)
                                      : std::vector<double>{box.v0};
    for (double u : us)
        for (double v : vs)
            if (box.contains(u, p == 2 ? v : box.v0)) base_pts.push_back({u, v});
    if (base_pts.empty()) throw std::runtime_error("sample_points: empty domain");

    PointCloud cloud;
    switch (kind) {
        case ConstructionKind::conormal:
            for (int c = 0; c < n; ++c) cloud.columns.push_back("x" + std::to_string(c + 1));
            for (int c = 0; c < n; ++c) cloud.columns.push_back("s" + std::to_string(c + 1));
            break;
        case ConstructionKind::coassociative_F:
        case ConstructionKind::associative_E:
            cloud.columns = {"t1", "t2", "t3", "x1", "x2", "x3", "x4"};
            break;
        case ConstructionKind::cayley_plus:
        case ConstructionKind::cayley_minus:
            cloud.columns = {"c1", "ci", "cj", "ck", "x1", "x2", "x3", "x4"};
            break;
        case ConstructionKind::spinor3_plus:
        case ConstructionKind::spinor3_minus:
            cloud.columns = {"c1", "ci", "cj", "ck", "x1", "x2", "x3"};
            break;
    }
    const std::size_t ncols = cloud.columns.size();
    const std::size_t nb = base_pts.size();
    cloud.rows = nb * static_cast<std::size_t>(nf);
    cloud.data.assign(cloud.rows * ncols, 0.0);

    for_each_index(static_cast<int>(nb), Exec::parallel, [&](int bi) {
        const ParamPoint pt = base_pts[static_cast<std::size_t>(bi)];
        FramePacket fp = frames(imm, pt, grid.mode);

        AsdRotation rot;
        SpinorEigenbasis basis;
        if (kind == ConstructionKind::coassociative_F ||
            kind == ConstructionKind::associative_E)
            rot = asd_rotation(fp);
        else if (kind != ConstructionKind::conormal)
            basis = (p == 2) ? spinor_eigenbasis(fp) : curve_spinor_eigenbasis(fp);

        for (int fi = 0; fi < nf; ++fi) {
            double* row =
                cloud.data.data() + (static_cast<std::size_t>(bi) * nf + fi) * ncols;
            const double* t = fibre[fi].data();
            switch (kind) {
                case ConstructionKind::conormal: {
                    for (int c = 0; c < n; ++c) row[c] = fp.x[c];
                    for (int c = 0; c < n; ++c) {
                        double s = 0;
                        for (int k = 0; k < fp.q; ++k) s += t[k] * fp.nu[k][c];
                        row[n + c] = s;
                    }
                    break;
                }
                case ConstructionKind::coassociative_F:
                case ConstructionKind::associative_E: {
                    for (int l = 0; l < 3; ++l) {
                        double s = 0;
                        if (kind == ConstructionKind::associative_E)
                            s = t[0] * rot.rot[0][l];
                        else
                            s = t[0] * rot.rot[1][l] + t[1] * rot.rot[2][l];
                        row[l] = s;
                    }
                    for (int c = 0; c < 4; ++c) row[3 + c] = fp.x[c];
                    break;
                }
                case ConstructionKind::cayley_plus:
                case ConstructionKind::cayley_minus:
                case ConstructionKind::spinor3_plus:
                case ConstructionKind::spinor3_minus: {
                    const Octonion* q = (kind == ConstructionKind::cayley_plus ||
                                         kind == ConstructionKind::spinor3_plus)
                                            ? basis.q_plus
                                            : basis.q_minus;
                    Octonion s = t[0] * q[0] + t[1] * q[1];
                    for (int c = 0; c < 4; ++c) row[c] = s.c[c];
                    if (spinor3) {
                        for (int c = 0; c < 3; ++c) row[4 + c] = fp.x[c + 1];
                    } else {
                        for (int c = 0; c < 4; ++c) row[4 + c] = fp.x[c];
                    }
                    break;
                }
            }
        }
    });
    return cloud;
}

}  // namespace calib
