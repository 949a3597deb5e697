#include "calib/forms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace calib;

namespace {

SplitVector base_vec(Bundle tag, int n, int idx) {
    SplitVector v = make_split(tag, n);
    v.base[idx] = 1;
    return v;
}

SplitVector fibre_vec(Bundle tag, int n, int idx) {
    SplitVector v = make_split(tag, n);
    v.fibre[idx] = 1;
    return v;
}

SplitVector random_split(Bundle tag, int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1, 1);
    SplitVector v = make_split(tag, n);
    for (int i = 0; i < v.base_dim; ++i) v.base[i] = dist(rng);
    for (int i = 0; i < v.fibre_dim; ++i) v.fibre[i] = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("omega: dual pairing, base-base, antisymmetry") {
    CHECK(omega_eval(base_vec(Bundle::cotangent, 4, 0), fibre_vec(Bundle::cotangent, 4, 0)) == 1);
    CHECK(omega_eval(base_vec(Bundle::cotangent, 4, 0), base_vec(Bundle::cotangent, 4, 1)) == 0);

    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        SplitVector u = random_split(Bundle::cotangent, 3, rng);
        CHECK(omega_eval(u, u) == 0);
        SplitVector v = random_split(Bundle::cotangent, 3, rng);
        CHECK(omega_eval(u, v) == -omega_eval(v, u));
    }
}

TEST_CASE("omega rejects mismatched vectors") {
    CHECK_THROWS_AS(
        omega_eval(base_vec(Bundle::cotangent, 4, 0), base_vec(Bundle::cotangent, 3, 0)),
        std::invalid_argument);
    CHECK_THROWS_AS(omega_eval(base_vec(Bundle::asd4, 4, 0), base_vec(Bundle::asd4, 4, 0)),
                    std::invalid_argument);
}

TEST_CASE("big omega: real plane is exactly 1, one fibre leg gives i") {
    for (int n : {2, 3, 4}) {
        std::vector<SplitVector> plane;
        for (int k = 0; k < n; ++k) plane.push_back(base_vec(Bundle::cotangent, n, k));
        std::complex<double> om = big_omega_eval(plane);
        CHECK(om.real() == 1.0);
        CHECK(om.imag() == 0.0);

        plane[0] = fibre_vec(Bundle::cotangent, n, 0);
        om = big_omega_eval(plane);
        CHECK(om.real() == doctest::Approx(0));
        CHECK(om.imag() == doctest::Approx(1));
    }
}

TEST_CASE("big omega on a conormal-style basis with diagonalized shape operator") {
    // E_k = base_k + lambda_k fibre^k (k < p), F_j = fibre^{p+j}
    const double l1 = 0.7, l2 = -1.9;
    SplitVector e1 = base_vec(Bundle::cotangent, 4, 0);
    e1.fibre[0] = l1;
    SplitVector e2 = base_vec(Bundle::cotangent, 4, 1);
    e2.fibre[1] = l2;
    std::vector<SplitVector> vs = {e1, e2, fibre_vec(Bundle::cotangent, 4, 2),
                                   fibre_vec(Bundle::cotangent, 4, 3)};
    std::complex<double> om = big_omega_eval(vs);
    std::complex<double> want = std::complex<double>(0, 1) * std::complex<double>(0, 1) *
                                std::complex<double>(1, l1) * std::complex<double>(1, l2);
    CHECK(std::abs(om - want) < 1e-14);
}

TEST_CASE("phi: canonical values") {
    auto f = [](int i) { return fibre_vec(Bundle::asd4, 4, i); };
    auto b = [](int i) { return base_vec(Bundle::asd4, 4, i); };
    CHECK(phi_eval(f(0), f(1), f(2)) == 1);
    CHECK(phi_eval(f(0), b(0), b(1)) == 1);
    CHECK(phi_eval(f(0), b(2), b(3)) == -1);
    CHECK(phi_eval(f(1), b(0), b(1)) == 0);
    CHECK(phi_eval(f(1), b(0), b(2)) == 1);
    CHECK(phi_eval(f(1), b(3), b(1)) == -1);
    CHECK(phi_eval(f(2), b(0), b(3)) == 1);
    CHECK(phi_eval(f(2), b(1), b(2)) == -1);

    // self-dual variant: plus signs and minus signs trade places
    CHECK(phi_eval(f(0), f(1), f(2), DualityVariant::self_dual) == 1);
    CHECK(phi_eval(f(0), b(0), b(1), DualityVariant::self_dual) == -1);
    CHECK(phi_eval(f(0), b(2), b(3), DualityVariant::self_dual) == -1);
    CHECK(phi_eval(f(1), b(0), b(2), DualityVariant::self_dual) == -1);
    CHECK(phi_eval(f(1), b(3), b(1), DualityVariant::self_dual) == -1);
}

TEST_CASE("omega and phi are alternating on random tuples") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 1000; ++it) {
        SplitVector u = random_split(Bundle::asd4, 4, rng);
        SplitVector v = random_split(Bundle::asd4, 4, rng);
        SplitVector w = random_split(Bundle::asd4, 4, rng);
        double a = phi_eval(u, v, w);
        CHECK(phi_eval(v, u, w) == doctest::Approx(-a).epsilon(1e-12));
        CHECK(phi_eval(u, w, v) == doctest::Approx(-a).epsilon(1e-12));
        CHECK(phi_eval(u, v, u) == doctest::Approx(0).scale(1).epsilon(1e-12));
    }
}

TEST_CASE("phi matches the octonion structure under the standard identification") {
    // phi(x, y, z) = <x, yz> for imaginary octonions
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Octonion x = oracle::random_octonion(rng), y = oracle::random_octonion(rng),
                 z = oracle::random_octonion(rng);
        x.c[0] = y.c[0] = z.c[0] = 0;
        double lhs = phi_eval(from_im_octonion(x), from_im_octonion(y), from_im_octonion(z));
        double rhs = dot(x, mul(y, z));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("split/octonion identification round-trips") {
    std::mt19937_64 rng(9);
    Octonion x = oracle::random_octonion(rng);
    x.c[0] = 0;
    Octonion back = to_im_octonion(from_im_octonion(x));
    CHECK(norm(back - x) == 0);
}

TEST_CASE("special lagrangian defects: plane, conormal zero section, symplectic pair") {
    std::vector<SplitVector> plane;
    for (int k = 0; k < 4; ++k) plane.push_back(base_vec(Bundle::cotangent, 4, k));
    SlagDefect d = is_special_lagrangian(plane, Phase{0});
    CHECK(d.omega_defect == 0);
    CHECK(d.im_defect == 0);
    CHECK_FALSE(d.degenerate);

    // conormal basis of a flat plane (zero shape operator), phase i^2
    std::vector<SplitVector> conormal = {base_vec(Bundle::cotangent, 4, 0),
                                         base_vec(Bundle::cotangent, 4, 1),
                                         fibre_vec(Bundle::cotangent, 4, 2),
                                         fibre_vec(Bundle::cotangent, 4, 3)};
    d = is_special_lagrangian(conormal, Phase::power_of_i(2));
    CHECK(d.omega_defect < 1e-15);
    CHECK(d.im_defect < 1e-15);

    std::vector<SplitVector> pair = {base_vec(Bundle::cotangent, 2, 0),
                                     fibre_vec(Bundle::cotangent, 2, 0)};
    for (double theta : {0.0, 0.4, 1.5}) {
        d = is_special_lagrangian(pair, Phase{theta});
        CHECK(d.omega_defect == doctest::Approx(1));
    }
}

TEST_CASE("coassociative defects: base plane, fibre-heavy spans") {
    auto f = [](int i) { return fibre_vec(Bundle::asd4, 4, i); };
    auto b = [](int i) { return base_vec(Bundle::asd4, 4, i); };
    CHECK(is_coassociative({b(0), b(1), b(2), b(3)}).defect == 0);
    CHECK(is_coassociative({f(0), f(1), f(2), b(0)}).defect == doctest::Approx(1));
    // F-bundle span over a flat plane
    CHECK(is_coassociative({f(1), f(2), b(0), b(1)}).defect == doctest::Approx(0).scale(1));
}

TEST_CASE("associative defects via the associator") {
    auto f = [](int i) { return fibre_vec(Bundle::asd4, 4, i); };
    auto b = [](int i) { return base_vec(Bundle::asd4, 4, i); };
    CHECK(is_associative({f(0), f(1), f(2)}).defect == doctest::Approx(0).scale(1));
    // images of (i, j, e): associator norm 2
    CHECK(is_associative({f(0), f(1), b(0)}).defect == doctest::Approx(2));
    // flat-surface triple (zero shape operator): e-bar_1, e-bar_2, omega-check^1
    CHECK(is_associative({b(0), b(1), f(0)}).defect == doctest::Approx(0).scale(1));
}

TEST_CASE("cayley defects") {
    auto u = [](int t) { return Octonion::unit(t); };
    CHECK(is_cayley({u(0), u(1), u(2), u(3)}).defect == doctest::Approx(0).scale(1));
    CHECK(is_cayley({u(4), u(5), u(6), u(7)}).defect == doctest::Approx(0).scale(1));
    CHECK(is_cayley({u(0), u(1), u(2), u(7)}).defect == doctest::Approx(1));
}

TEST_CASE("degenerate spans are flagged") {
    std::mt19937_64 rng(11);
    SplitVector u = random_split(Bundle::asd4, 4, rng);
    SplitVector v = random_split(Bundle::asd4, 4, rng);
    SplitVector w = u;
    for (int i = 0; i < 4; ++i) w.base[i] = u.base[i] + v.base[i];
    for (int i = 0; i < 3; ++i) w.fibre[i] = u.fibre[i] + v.fibre[i];
    CHECK(is_associative({u, v, w}).degenerate);
    SplitVector z = random_split(Bundle::asd4, 4, rng);
    CHECK(is_coassociative({u, v, z, w}).degenerate);

    std::vector<SplitVector> lag = {base_vec(Bundle::cotangent, 2, 0),
                                    base_vec(Bundle::cotangent, 2, 0)};
    CHECK(is_special_lagrangian(lag, Phase{0}).degenerate);
}

TEST_CASE("defects are invariant under invertible recombination of the span") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-1, 1);
    auto recombine = [&](const std::vector<SplitVector>& vs) {
        const int n = static_cast<int>(vs.size());
        std::vector<SplitVector> out(vs.size(), make_split(vs[0].tag, vs[0].base_dim));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double m = dist(rng) + (i == j ? 2.0 : 0.0);  // diagonally dominant
                for (int c = 0; c < out[i].base_dim; ++c) out[i].base[c] += m * vs[j].base[c];
                for (int c = 0; c < out[i].fibre_dim; ++c)
                    out[i].fibre[c] += m * vs[j].fibre[c];
            }
        }
        return out;
    };

    for (int it = 0; it < 50; ++it) {
        std::vector<SplitVector> tri = {random_split(Bundle::asd4, 4, rng),
                                        random_split(Bundle::asd4, 4, rng),
                                        random_split(Bundle::asd4, 4, rng)};
        double d0 = is_associative(tri).defect;
        CHECK(is_associative(recombine(tri)).defect == doctest::Approx(d0).epsilon(1e-10));

        std::vector<SplitVector> quad = {random_split(Bundle::asd4, 4, rng),
                                         random_split(Bundle::asd4, 4, rng),
                                         random_split(Bundle::asd4, 4, rng),
                                         random_split(Bundle::asd4, 4, rng)};
        double c0 = is_coassociative(quad).defect;
        CHECK(is_coassociative(recombine(quad)).defect == doctest::Approx(c0).epsilon(1e-10));

        std::vector<SplitVector> lag = {random_split(Bundle::cotangent, 3, rng),
                                        random_split(Bundle::cotangent, 3, rng),
                                        random_split(Bundle::cotangent, 3, rng)};
        SlagDefect s0 = is_special_lagrangian(lag, Phase{0.3});
        SlagDefect s1 = is_special_lagrangian(recombine(lag), Phase{0.3});
        CHECK(s1.omega_defect == doctest::Approx(s0.omega_defect).epsilon(1e-9));
        CHECK(s1.im_defect == doctest::Approx(s0.im_defect).epsilon(1e-9).scale(1));
    }
}

TEST_CASE("associative triples have coassociative orthogonal complements") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 100; ++it) {
        // random associative plane span{a, b, ab} for orthonormal imaginary a, b
        Octonion a = oracle::random_octonion(rng);
        a.c[0] = 0;
        a = (1.0 / norm(a)) * a;
        Octonion b = oracle::random_octonion(rng);
        b.c[0] = 0;
        b = b - dot(b, a) * a;
        b = (1.0 / norm(b)) * b;
        Octonion c = mul(a, b);

        std::vector<SplitVector> tri = {from_im_octonion(a), from_im_octonion(b),
                                        from_im_octonion(c)};
        CHECK(is_associative(tri).defect < 1e-10);

        // orthogonal complement in Im O
        Octonion span[3] = {a, b, c};
        std::vector<SplitVector> comp;
        VecT<double, 8> w[4];
        int count = 0;
        for (int t = 1; t < 8 && count < 4; ++t) {
            VecT<double, 8> v;
            v.n = 8;
            v[t] = 1;
            for (const Octonion& s : span)
                for (int m = 0; m < 8; ++m) v[m] -= s.c[t] * s.c[m];
            for (int j = 0; j < count; ++j) {
                double pr = dot(v, w[j]);
                for (int m = 0; m < 8; ++m) v[m] -= pr * w[j][m];
            }
            double r = norm(v);
            if (r < 1e-6) continue;
            for (int m = 0; m < 8; ++m) v[m] /= r;
            w[count++] = v;
        }
        REQUIRE(count == 4);
        for (int j = 0; j < 4; ++j) {
            Octonion o;
            for (int m = 0; m < 8; ++m) o.c[m] = w[j][m];
            comp.push_back(from_im_octonion(o));
        }
        CHECK(is_coassociative(comp).defect < 1e-10);
    }
}
