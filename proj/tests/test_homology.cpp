#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "complexlab/homology.hpp"
#include "complexlab/oracle.hpp"
#include "complexlab/sampler.hpp"

using namespace complexlab;

namespace {

Complex cx(Ambient a, std::vector<Simplex> faces) {
    return Complex::hypergraph(a, std::move(faces));
}

Complex random_complex(Rng& rng, const Ambient& a) {
    std::vector<Simplex> faces;
    for (Simplex s : enumerate_ambient(a))
        if (rng.bernoulli(1.0 / (1 << std::min(s.dim() + 1, 5)))) faces.push_back(s);
    return upper_closure(cx(a, faces));
}

// Dense integer product of consecutive boundary matrices.
bool composes_to_zero(const BoundaryMatrix& low, const BoundaryMatrix& high) {
    REQUIRE(low.cols == high.rows);
    for (int j = 0; j < high.cols; ++j) {
        std::vector<long> acc(low.rows, 0);
        for (auto [mid, s1] : high.columns[j])
            for (auto [row, s2] : low.columns[mid]) acc[row] += s1 * s2;
        for (long v : acc)
            if (v != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("boundary matrix of the interval") {
    Complex full = Complex::full(Ambient::simplex(1));
    BoundaryMatrix m = boundary_matrix(full, 1);
    REQUIRE(m.rows == 2);
    REQUIRE(m.cols == 1);
    REQUIRE(m.columns[0].size() == 2);
    CHECK(m.columns[0][0] == std::pair<int, int>{0, -1});
    CHECK(m.columns[0][1] == std::pair<int, int>{1, 1});
}

TEST_CASE("boundary of boundary is zero") {
    Rng rng = Rng::stream(5, 5);
    for (int n = 2; n <= 6; ++n) {
        Ambient a = Ambient::simplex(n);
        for (int trial = 0; trial < 20; ++trial) {
            Complex y = random_complex(rng, a);
            for (int k = 2; k <= y.dim(); ++k)
                CHECK(composes_to_zero(boundary_matrix(y, k - 1), boundary_matrix(y, k)));
        }
    }
}

TEST_CASE("rank of the circle's edge boundary") {
    Complex circle = Complex::full(Ambient::boundary(2));
    BoundaryMatrix m = boundary_matrix(circle, 1);
    REQUIRE(m.rows == 3);
    REQUIRE(m.cols == 3);
    CHECK(rank(m, FieldSpec::rationals()) == 2);
    CHECK(rank(m, FieldSpec::gf_default()) == 2);
    CHECK(rank(m, FieldSpec::gf(2)) == 2);
}

TEST_CASE("betti numbers of standard small complexes") {
    for (FieldSpec field : {FieldSpec::rationals(), FieldSpec::gf_default()}) {
        BettiVector circle = betti(Complex::full(Ambient::boundary(2)), field);
        CHECK(circle.values == std::vector<std::int64_t>{1, 1});
        BettiVector sphere = betti(Complex::full(Ambient::boundary(3)), field);
        CHECK(sphere.values == std::vector<std::int64_t>{1, 0, 1});
        BettiVector points = betti(cx(Ambient::boundary(2), {{0}, {1}, {2}}), field);
        CHECK(points.values == std::vector<std::int64_t>{3});
        CHECK(points.reduced(0) == 2);
        CHECK(points.reduced(-1) == 0);
    }

    BettiVector nothing = betti(Complex::empty(Ambient::simplex(2)));
    CHECK(nothing.values.empty());
    CHECK(nothing.reduced(-1) == 1);
    CHECK(nothing.reduced(0) == 0);

    BettiVector point = betti(cx(Ambient::simplex(2), {{0}}));
    CHECK(point.values == std::vector<std::int64_t>{1});
    CHECK(point.reduced(-1) == 0);
    CHECK(point.reduced(0) == 0);
}

TEST_CASE("euler characteristic from betti numbers equals the face-count version") {
    Rng rng = Rng::stream(6, 6);
    for (int n = 3; n <= 6; ++n) {
        for (Ambient a : {Ambient::simplex(n), Ambient::boundary(n)}) {
            for (int trial = 0; trial < 15; ++trial) {
                Complex y = random_complex(rng, a);
                if (y.is_empty()) continue;
                BettiVector bv = betti(y, FieldSpec::gf_default());
                long lhs = 0, rhs = 0;
                auto f = f_vector(y);
                for (int k = 0; k <= y.dim(); ++k) {
                    long sign = k % 2 ? -1 : 1;
                    lhs += sign * bv.values[k];
                    rhs += sign * static_cast<long>(f[k]);
                }
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("GF(2) agrees with rational homology on graphs") {
    Rng rng = Rng::stream(7, 7);
    Ambient a = Ambient::simplex(8);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Simplex> faces;
        for (Simplex s : enumerate_ambient(a))
            if (s.dim() <= 1 && rng.bernoulli(0.4)) faces.push_back(s);
        Complex g = upper_closure(cx(a, faces));
        BettiVector over_q = betti(g, FieldSpec::rationals());
        BettiVector over_2 = betti(g, FieldSpec::gf(2));
        CHECK(over_q.values == over_2.values);
    }
}

TEST_CASE("big-prime field agrees with rational homology on random complexes") {
    Rng rng = Rng::stream(8, 8);
    for (int trial = 0; trial < 25; ++trial) {
        Complex y = random_complex(rng, Ambient::boundary(5));
        CHECK(betti(y, FieldSpec::rationals()).values ==
              betti(y, FieldSpec::gf_default()).values);
    }
}

TEST_CASE("reduced alexander duality, exhaustive at n=3") {
    Ambient a = Ambient::boundary(3);
    for (const Complex& x : oracle::enumerate_complexes(a)) {
        BettiVector bx = betti(x, FieldSpec::rationals());
        BettiVector bc = betti(dual_c(x), FieldSpec::rationals());
        for (int j = 0; j <= a.n - 2; ++j) {
            INFO("j = ", j);
            CHECK(bc.reduced(j) == bx.reduced(a.n - 2 - j));
        }
    }
}

TEST_CASE("unreduced duality fails where the reduced form holds") {
    // X a single vertex in the boundary of the tetrahedron: the dual is a
    // contractible disk, so unreduced H_1(dual) = 0 while H_0(X) = 1 in the
    // mirrored degree. The reduced convention repairs exactly this case.
    Ambient a = Ambient::boundary(3);
    Complex x = cx(a, {{0}});
    Complex cxx = dual_c(x);
    BettiVector bx = betti(x), bc = betti(cxx);
    CHECK(bc.value(1) == 0);
    CHECK(bx.value(0) == 1); // unreduced sides disagree: 0 != 1
    CHECK(bc.reduced(1) == bx.reduced(0));
    for (int j = 0; j <= 1; ++j) CHECK(bc.reduced(j) == bx.reduced(1 - j));
}

TEST_CASE("dual complex and alexander dual have the same reduced homology") {
    Rng rng = Rng::stream(9, 9);
    for (int n = 2; n <= 5; ++n) {
        Ambient a = Ambient::boundary(n);
        for (int trial = 0; trial < 20; ++trial) {
            Complex y = random_complex(rng, a);
            BettiVector via_c = betti(dual_c(y), FieldSpec::rationals());
            BettiVector via_prime = betti(dual_prime(y).complex, FieldSpec::rationals());
            for (int j = -1; j <= n; ++j) CHECK(via_c.reduced(j) == via_prime.reduced(j));
        }
    }
}

TEST_CASE("homology input validation") {
    Complex open = cx(Ambient::simplex(2), {{0, 1}});
    CHECK_THROWS_AS(betti(open, FieldSpec::rationals()), std::invalid_argument);
    CHECK_THROWS_AS(boundary_matrix(open, 1), std::invalid_argument);
}
