#pragma once

#include "calib/expr.hpp"
#include "calib/linalg.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Parametric immersions M^p in R^n (p = 1 or 2, n = 3 or 4) with orthonormal
// frames, the second fundamental form, and the pointwise surface conditions
// (minimal, austere, real isotropic).
//
// Frames are pointwise: the tangent frame comes from Gram-Schmidt on the
// Jacobian columns in parameter order, the normal frame from projecting the
// ambient basis vectors in index order (skipping near-tangent ones), and the
// last normal vector is flipped if needed so that (e, nu) is positively
// oriented.  The second fundamental form follows the Harvey-Lawson sign
// convention A^nu(w) = (grad_w nu)^T, which in terms of second partials reads
// A^k_ij = -<d2x(e~_i, e~_j), nu_k> with e~ the tangent frame pulled back to
// parameter space.

namespace calib {

enum class DiffMode { jet, finite_difference };

struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamPoint {
    double u = 0;
    double v = 0;
};

struct DomainBox {
    double u0 = -1, u1 = 1;
    double v0 = -1, v1 = 1;
    // Optional exclusion predicate: a point is usable only where the
    // expression evaluates to a positive value.
    std::optional<Expr> keep_if_positive;

    bool contains(double u, double v) const;
};

struct ImmersionJet {
    int p = 2, n = 4;
    Vec4 x;
    double d1[4][2] = {};     // d1[coord][param]
    double d2[4][2][2] = {};  // d2[coord][param][param]
};

class Immersion {
  public:
    Immersion() = default;
    Immersion(int p, int n, std::vector<Expr> components, DomainBox domain);

    int p() const { return p_; }
    int n() const { return n_; }
    const DomainBox& domain() const { return domain_; }
    const std::vector<Expr>& components() const { return components_; }

    ImmersionJet eval(ParamPoint pt, DiffMode mode = DiffMode::jet) const;

  private:
    int p_ = 2, n_ = 4;
    std::vector<Expr> components_;
    DomainBox domain_;
};

// Re-embeds an immersion into R^4 as (0, x^1, ..., x^n); the extra direction
// comes first so that it is picked up as the first normal vector.
Immersion lift_to_r4(const Immersion& imm);

enum class SffSign { harvey_lawson };

struct FramePacket {
    ParamPoint point;
    int p = 2, n = 4, q = 2;
    Vec4 x;
    Vec4 e[2];
    Vec4 nu[3];
    double d1[4][2] = {};
    double d2[4][2][2] = {};
    double pullback[2][2] = {};  // e_i = sum_a pullback[i][a] d/du^a
};

struct Sff {
    int p = 2, q = 2;
    double A[3][3][3] = {};  // A[k][i][j], symmetric in (i, j)
    SffSign convention = SffSign::harvey_lawson;

    double trace(int k) const {
        double t = 0;
        for (int i = 0; i < p; ++i) t += A[k][i][i];
        return t;
    }
};

FramePacket frames(const Immersion& imm, ParamPoint pt, DiffMode mode = DiffMode::jet,
                   double pivot_tol = 1e-10);

Sff second_fundamental_form(const FramePacket& fp);

struct MeanCurvature {
    Vec4 ambient;       // H = sum_k (Tr A^k) nu_k
    double coeff[3] = {};  // coefficients on the normal frame
    double norm = 0;
};

MeanCurvature mean_curvature(const FramePacket& fp, const Sff& sff);
bool is_minimal(const FramePacket& fp, const Sff& sff, double tol = 1e-8);

// Max over sampled unit normals of the largest odd elementary symmetric
// polynomial in the eigenvalues of A^nu (p <= 3).  For p <= 2 the analytic
// maximiser is included in the sample set, so the value equals |H| there.
double austere_defect(const Sff& sff, int normal_samples = 32);

struct IsotropyReport {
    Vec4 H;
    Vec4 W1, W2;  // complex normal vector W = W1 + i W2
    std::complex<double> Q;
    bool plus_ok = false, minus_ok = false;
    double plus_residual = 0, minus_residual = 0;
};

// p = 2, n = 4 only.  Classifies whether A^{J nu} = +J A^nu or -J A^nu holds.
IsotropyReport isotropy_report(const FramePacket& fp, const Sff& sff, double tol = 1e-8);

// Residuals of the quasi-linear minimal graph system for (u, v, f1, f2):
//   g22 f^k_11 + g11 f^k_22 - 2 g12 f^k_12,  k = 1, 2.
std::array<double, 2> minimal_graph_residual(const Expr& f1, const Expr& f2, ParamPoint pt);

// Frames together with their first parameter derivatives, propagated through
// the same Gram-Schmidt with dual numbers (jet mode only).
struct FrameField {
    FramePacket fp;
    Vec4 de[2][2];   // de[a][i] = d(e_i)/du^a
    Vec4 dnu[2][3];  // dnu[a][j] = d(nu_j)/du^a
};

FrameField frame_field(const Immersion& imm, ParamPoint pt, double pivot_tol = 1e-10);

// Deterministic low-discrepancy samples of the parameter box (Halton bases 2
// and 3, started at index 1 + seed); excluded-region points are rejected.
std::vector<ParamPoint> sample_domain(const Immersion& imm, int count, unsigned long long seed);

}  // namespace calib
