#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "complexlab/oracle.hpp"

using namespace complexlab;
using namespace complexlab::oracle;

namespace {

Complex cx(Ambient a, std::vector<Simplex> faces) {
    return Complex::hypergraph(a, std::move(faces));
}

ParamMap skew_params(const Ambient& a) {
    // Deterministic asymmetric rationals in (0,1), different per simplex.
    std::vector<std::pair<Simplex, Rational>> probs;
    long k = 0;
    for (Simplex s : enumerate_ambient(a)) {
        probs.emplace_back(s, rational((7 * k + 3) % 10 + 1, 11));
        ++k;
    }
    return ParamMap::explicit_map(a, std::move(probs));
}

} // namespace

TEST_CASE("complex enumeration counts") {
    CHECK(enumerate_complexes(Ambient::simplex(0)).size() == 2);
    CHECK(enumerate_complexes(Ambient::simplex(1)).size() == 5);
    CHECK(enumerate_complexes(Ambient::simplex(2)).size() == 19);
    CHECK(enumerate_complexes(Ambient::boundary(2)).size() == 18);
    CHECK(enumerate_complexes(Ambient::boundary(3)).size() == 166);
    CHECK(enumerate_complexes(Ambient::simplex(3)).size() == 167);
    CHECK_THROWS_AS(enumerate_complexes(Ambient::simplex(4)), std::invalid_argument);

    auto bd2 = enumerate_complexes(Ambient::boundary(2));
    auto find = [&](const Complex& c) {
        for (const auto& y : bd2)
            if (y == c) return true;
        return false;
    };
    CHECK(find(Complex::full(Ambient::boundary(2))));
    CHECK(find(cx(Ambient::boundary(2), {{0}})));
    CHECK(find(Complex::empty(Ambient::boundary(2))));
    for (const auto& y : bd2) CHECK(y.is_closed());
}

TEST_CASE("pushforward distributions at n=1") {
    Ambient d1 = Ambient::simplex(1);
    ParamMap half = ParamMap::uniform(d1, rational(1, 2));
    auto table = std::make_shared<AmbientTable>(d1);

    ExactDistribution up = pushforward(Model::upper, half, table);
    CHECK(up.prob_of(Complex::empty(d1)) == rational(1, 8));
    CHECK(up.prob_of(cx(d1, {{0}})) == rational(1, 8));
    CHECK(up.prob_of(cx(d1, {{1}})) == rational(1, 8));
    CHECK(up.prob_of(cx(d1, {{0}, {1}})) == rational(1, 8));
    CHECK(up.prob_of(Complex::full(d1)) == rational(1, 2));
    CHECK(up.total_mass() == 1);

    ExactDistribution lo = pushforward(Model::lower, half, table);
    CHECK(lo.prob_of(Complex::empty(d1)) == rational(1, 4));
    CHECK(lo.prob_of(cx(d1, {{0}})) == rational(1, 4));
    CHECK(lo.prob_of(cx(d1, {{1}})) == rational(1, 4));
    CHECK(lo.prob_of(cx(d1, {{0}, {1}})) == rational(1, 8));
    CHECK(lo.prob_of(Complex::full(d1)) == rational(1, 8));
    CHECK(lo.total_mass() == 1);
}

TEST_CASE("pushforward mass is exactly one for varied parameters") {
    for (Ambient a : {Ambient::simplex(2), Ambient::boundary(3)}) {
        for (const ParamMap& params : {ParamMap::uniform(a, rational(1, 2)), skew_params(a)}) {
            for (Model model : {Model::lower, Model::upper}) {
                ExactDistribution dist = pushforward(model, params);
                CHECK(dist.total_mass() == 1);
                for (const auto& [bits, p] : dist.entries()) {
                    CHECK(dist.table().is_closed_bits(bits));
                    CHECK(p > 0);
                }
            }
        }
    }
}

TEST_CASE("sure parameters give a point mass at the full ambient") {
    Ambient a = Ambient::boundary(2);
    ParamMap sure = ParamMap::uniform(a, 1);
    for (Model model : {Model::lower, Model::upper}) {
        ExactDistribution dist = pushforward(model, sure);
        CHECK(dist.entries().size() == 1);
        CHECK(dist.prob_of(Complex::full(a)) == 1);
    }
}

TEST_CASE("bit-level closure, interior and dual match the complex module") {
    for (Ambient a : {Ambient::simplex(2), Ambient::boundary(3)}) {
        AmbientTable t(a);
        const std::uint64_t total = std::uint64_t{1} << t.count();
        for (std::uint64_t h = 0; h < total; h += 7) { // stride keeps it quick
            auto bits = static_cast<std::uint32_t>(h);
            Complex x = t.to_complex(bits);
            CHECK(t.to_complex(t.closure_bits(bits)) == upper_closure(x));
            CHECK(t.to_complex(t.interior_bits(bits)) == lower_interior(x));
            CHECK(t.is_closed_bits(bits) == x.is_closed());
            if (!a.include_top) CHECK(t.to_complex(t.dual_bits(bits)) == dual_c(x));
        }
    }
}

TEST_CASE("identity verification passes on small ambients") {
    for (Ambient a : {Ambient::simplex(1), Ambient::boundary(2)}) {
        for (const ParamMap& params : {ParamMap::uniform(a, rational(1, 2)), skew_params(a)}) {
            std::vector<std::string> names;
            for (const std::string& name : identity_names())
                if (!(a.include_top && name == "duality")) names.push_back(name);
            auto results = verify_identities(a, params, names);
            for (const auto& r : results) {
                INFO(r.identity, ": ", r.counterexample);
                CHECK(r.pass);
                CHECK(r.instances > 0);
            }
        }
    }
}

TEST_CASE("identity verification input validation") {
    Ambient d1 = Ambient::simplex(1);
    ParamMap half = ParamMap::uniform(d1, rational(1, 2));
    CHECK_THROWS_AS(verify_identities(d1, half, {"no-such-identity"}), std::invalid_argument);
    CHECK_THROWS_AS(verify_identities(d1, half, {"duality"}), std::invalid_argument);
    CHECK_THROWS_AS(
        verify_identities(d1, ParamMap::uniform(Ambient::simplex(2), 1), {"containment"}),
        std::invalid_argument);
}

TEST_CASE("union and intersection convolutions at n=1") {
    Ambient d1 = Ambient::simplex(1);
    ParamMap p1 = ParamMap::uniform(d1, rational(1, 2));
    ParamMap p2 = ParamMap::explicit_map(d1, {{Simplex{0}, rational(1, 3)},
                                              {Simplex{1}, rational(2, 3)},
                                              {Simplex{0, 1}, rational(1, 7)}});
    auto table = std::make_shared<AmbientTable>(d1);
    ExactDistribution u1 = pushforward(Model::upper, p1, table);
    ExactDistribution u2 = pushforward(Model::upper, p2, table);
    ExactDistribution joined = convolve_union(u1, u2);
    ExactDistribution expected = pushforward(Model::upper, union_params_upper(p1, p2), table);
    CHECK(joined.total_mass() == 1);
    for (std::uint32_t y : table->closed_masks())
        CHECK(joined.prob_of_bits(y) == expected.prob_of_bits(y));

    ExactDistribution l1 = pushforward(Model::lower, p1, table);
    ExactDistribution l2 = pushforward(Model::lower, p2, table);
    ExactDistribution met = convolve_intersection(l1, l2);
    ExactDistribution expected2 =
        pushforward(Model::lower, intersection_params_lower(p1, p2), table);
    for (std::uint32_t y : table->closed_masks())
        CHECK(met.prob_of_bits(y) == expected2.prob_of_bits(y));
}
