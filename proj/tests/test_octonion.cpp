#include "calib/octonion.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

using namespace calib;

TEST_CASE("all 64 basis products match the table oracle") {
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            Octonion got = mul(Octonion::unit(r), Octonion::unit(c));
            Octonion want = oracle::table_mul(r, c);
            for (int t = 0; t < 8; ++t) CHECK(got.c[t] == want.c[t]);
        }
    }
}

TEST_CASE("spot products: i j = k, e i = -ie, 1 x = x") {
    Octonion i = Octonion::unit(1), j = Octonion::unit(2), k = Octonion::unit(3);
    Octonion e = Octonion::unit(4), ie = Octonion::unit(5);
    CHECK(norm(mul(i, j) - k) == 0);
    CHECK(norm(mul(e, i) + ie) == 0);

    std::mt19937_64 rng(7);
    Octonion x = oracle::random_octonion(rng);
    CHECK(norm(mul(Octonion::one(), x) - x) == 0);
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10000; ++it) {
        Octonion a = oracle::random_octonion(rng);
        Octonion b = oracle::random_octonion(rng);
        double lhs = norm(mul(a, b));
        double rhs = norm(a) * norm(b);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("conjugation: a conj(a) = |a|^2") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 100; ++it) {
        Octonion a = oracle::random_octonion(rng);
        Octonion p = mul(a, conj(a));
        CHECK(std::abs(p.c[0] - dot(a, a)) < 1e-13);
        for (int t = 1; t < 8; ++t) CHECK(std::abs(p.c[t]) < 1e-13);
    }
}

TEST_CASE("alternativity: a(a x) = a^2 x") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 200; ++it) {
        Octonion a = oracle::random_octonion(rng);
        Octonion x = oracle::random_octonion(rng);
        Octonion lhs = mul(a, mul(a, x));
        Octonion rhs = mul(mul(a, a), x);
        CHECK(norm(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("associator: quaternion triple vanishes, (i, j, e) = 2ke") {
    Octonion i = Octonion::unit(1), j = Octonion::unit(2), k = Octonion::unit(3);
    Octonion e = Octonion::unit(4), ke = Octonion::unit(7);
    CHECK(norm(associator(i, j, k)) == 0);

    // table oracle: (ij)e = ke, i(je) = -ke
    Octonion expected = 2.0 * ke;
    CHECK(norm(associator(i, j, e) - expected) == 0);
}

TEST_CASE("associator is alternating and kills repeated arguments") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 200; ++it) {
        Octonion a = oracle::random_octonion(rng);
        Octonion b = oracle::random_octonion(rng);
        Octonion c = oracle::random_octonion(rng);
        double scale = norm(a) * norm(b) * norm(c);
        CHECK(norm(associator(a, a, b)) < 1e-12 * scale);
        CHECK(norm(associator(a, b, c) + associator(b, a, c)) < 1e-12 * scale);
        CHECK(norm(associator(a, b, c) + associator(a, c, b)) < 1e-12 * scale);
    }
}

TEST_CASE("cayley product: quaternion plane and He are Cayley, (1,i,j,ke) is not") {
    auto u = [](int t) { return Octonion::unit(t); };
    CayleyProduct quat = cayley_product_im(u(0), u(1), u(2), u(3));
    CHECK_FALSE(quat.degenerate);
    CHECK(norm(quat.value) < 1e-14);

    CayleyProduct he = cayley_product_im(u(4), u(5), u(6), u(7));
    CHECK_FALSE(he.degenerate);
    CHECK(norm(he.value) < 1e-14);

    // table oracle: conj(j)(ke) = ie, i(ie) = -e
    CayleyProduct bad = cayley_product_im(u(0), u(1), u(2), u(7));
    CHECK_FALSE(bad.degenerate);
    CHECK(norm(bad.value.o + u(4)) < 1e-14);
}

TEST_CASE("cayley product flags linearly dependent inputs") {
    std::mt19937_64 rng(23);
    Octonion a = oracle::random_octonion(rng);
    Octonion b = oracle::random_octonion(rng);
    Octonion c = oracle::random_octonion(rng);
    CayleyProduct p = cayley_product_im(a, b, c, a + b);
    CHECK(p.degenerate);
}

TEST_CASE("cayley product is alternating on the multilinear extension") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 50; ++it) {
        Octonion a = oracle::random_octonion(rng);
        Octonion b = oracle::random_octonion(rng);
        Octonion c = oracle::random_octonion(rng);
        Octonion d = oracle::random_octonion(rng);
        Octonion p = cayley_product_im(a, b, c, d).value.o;
        Octonion q = cayley_product_im(b, a, c, d).value.o;
        Octonion r = cayley_product_im(a, b, d, c).value.o;
        double scale = std::max(1.0, norm(p));
        CHECK(norm(p + q) < 1e-10 * scale);
        CHECK(norm(p + r) < 1e-10 * scale);
    }
}

TEST_CASE("cayley product vanishes on basis 4-tuples of known Cayley planes") {
    // brute force over all ordered basis 4-tuples of the quaternion plane
    // span{1, i, j, k} and of the quaternionic line span{1, i, e, ie}
    for (auto plane : {std::array<int, 4>{0, 1, 2, 3}, {0, 1, 4, 5}}) {
        int idx[4] = {0, 1, 2, 3};
        std::sort(idx, idx + 4);
        do {
            CayleyProduct p = cayley_product_im(
                Octonion::unit(plane[idx[0]]), Octonion::unit(plane[idx[1]]),
                Octonion::unit(plane[idx[2]]), Octonion::unit(plane[idx[3]]));
            CHECK_FALSE(p.degenerate);
            CHECK(norm(p.value) < 1e-14);
        } while (std::next_permutation(idx, idx + 4));
    }
}

TEST_CASE("clifford action: gamma(e) examples and the Clifford relation") {
    auto u = [](int t) { return Octonion::unit(t); };
    CHECK(norm(clifford_gamma(u(4), u(0)) - u(4)) == 0);  // gamma(e)(1) = e

    std::mt19937_64 rng(31);
    Octonion x = oracle::random_octonion(rng);
    Octonion exx = clifford_gamma(u(4), clifford_gamma(u(4), x));
    CHECK(norm(exx + x) < 1e-14);

    Octonion q = oracle::random_octonion(rng);
    Octonion anti = clifford_gamma(u(4), clifford_gamma(u(5), q)) +
                    clifford_gamma(u(5), clifford_gamma(u(4), q));
    CHECK(norm(anti) < 1e-14);

    // exact relation on all basis pairs and basis spinors
    for (int a = 4; a < 8; ++a)
        for (int b = 4; b < 8; ++b)
            for (int s = 0; s < 8; ++s) {
                Octonion lhs = clifford_gamma(u(a), clifford_gamma(u(b), u(s))) +
                               clifford_gamma(u(b), clifford_gamma(u(a), u(s)));
                Octonion rhs = (a == b) ? -2.0 * u(s) : Octonion{};
                CHECK(norm(lhs - rhs) == 0);
            }
}

TEST_CASE("clifford action rejects 1-forms outside He") {
    Octonion alpha = Octonion::unit(1);  // i is not in He
    CHECK_THROWS_AS(clifford_gamma(alpha, Octonion::one()), std::invalid_argument);
}
