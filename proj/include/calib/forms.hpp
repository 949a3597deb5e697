#pragma once

#include "calib/linalg.hpp"
#include "calib/octonion.hpp"

#include <complex>
#include <vector>

// Calibration structures on the flat model spaces:
//   - canonical symplectic form omega and holomorphic volume Omega on
//     T*(R^n) = C^n,
//   - the G2 3-form phi on the anti-self-dual 2-forms over R^4 (a 7-space),
//   - pass/fail defect tests for special Lagrangian, coassociative,
//     associative and Cayley spanning sets.
//
// Tangent vectors to a bundle total space split into a base part and a fibre
// part; SplitVector carries both with a tag naming the ambient bundle.
//
// Defects are computed on the orthonormalized span, so they are properties of
// the subspace, not of the chosen spanning set.  The defect value is the
// Euclidean norm over all form evaluations on the orthonormal basis (an
// orthogonally invariant quantity); the largest single evaluation is kept
// alongside as a raw diagnostic.

namespace calib {

enum class Bundle {
    cotangent,      // T*(R^n): base n, fibre n
    asd4,           // Lambda^2_-(R^4): base 4, fibre 3
    spinor_minus4,  // S_-(R^4): base 4, fibre 4
    spinor3,        // S(R^3): base 3, fibre 4
};

struct SplitVector {
    Bundle tag = Bundle::cotangent;
    int base_dim = 0;
    int fibre_dim = 0;
    Vec4 base;
    Vec4 fibre;
};

SplitVector make_split(Bundle tag, int n);
int fibre_dim_of(Bundle tag, int n);

// Phase angle of a special Lagrangian condition, theta in Im(e^{-i theta} Omega).
struct Phase {
    double theta = 0;
    static Phase power_of_i(int q) { return Phase{q * 1.5707963267948966}; }
};

// omega = sum_k  base^k wedge fibre_k.
double omega_eval(const SplitVector& u, const SplitVector& v);

// Omega = (base^1 + i fibre_1) wedge ... wedge (base^n + i fibre_n),
// evaluated on n split vectors (raw value; no normalization).
std::complex<double> big_omega_eval(const std::vector<SplitVector>& vectors);

enum class DualityVariant { anti_self_dual, self_dual };

// The canonical 3-form on Lambda^2_-(R^4) (or its Lambda^2_+ counterpart).
double phi_eval(const SplitVector& u, const SplitVector& v, const SplitVector& w,
                DualityVariant variant = DualityVariant::anti_self_dual);

struct SlagDefect {
    double omega_defect = 0;  // norm over omega on all pairs of the orthonormal basis
    double im_defect = 0;     // |Im(e^{-i theta} Omega)| on the orthonormal basis
    double omega_max = 0;     // largest single |omega(q_a, q_b)|
    bool degenerate = false;
};

SlagDefect is_special_lagrangian(const std::vector<SplitVector>& vectors, Phase phase,
                                 double tol = 1e-10);

struct SpanDefect {
    double defect = 0;   // invariant norm over the form evaluations
    double max_abs = 0;  // largest single evaluation
    bool degenerate = false;
};

// phi restricted to the span of 4 vectors; zero iff the span is coassociative.
SpanDefect is_coassociative(const std::vector<SplitVector>& vectors, double tol = 1e-10,
                            DualityVariant variant = DualityVariant::anti_self_dual);

// Norm of the associator of the orthonormalized triple under the standard
// identification of the 7 ambient directions with Im O:
//   (fibre_1, fibre_2, fibre_3, base_1..base_4) -> (i, j, k, e, ie, je, ke).
SpanDefect is_associative(const std::vector<SplitVector>& vectors, double tol = 1e-10);

// Norm of the imaginary 4-fold octonion product of the orthonormalized tuple.
SpanDefect is_cayley(const std::vector<Octonion>& vectors, double tol = 1e-10);

// The standard identification above, as maps between 7-coordinate split
// vectors on asd4 and imaginary octonions.
Octonion to_im_octonion(const SplitVector& v);
SplitVector from_im_octonion(const Octonion& o);

}  // namespace calib
