#include <doctest.h>

#include "carlitz/json_io.hpp"
#include "test_util.hpp"

using namespace carlitz;

TEST_CASE("canonical text form") {
    const Fq& F2 = Fq::get(2, 1);
    FqPoly a(F2, {1, 0, 1});  // 1 + θ²
    CHECK(a.str() == "[1,0,1]");
    CHECK(to_json(a).dump() == "[1,0,1]");
}

TEST_CASE("round trips are bit-exact") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        const Fq& F = Fq::get(p, e);
        testutil::Rng rng(uint64_t(13 * p + e));
        for (int it = 0; it < 40; ++it) {
            FqPoly a = testutil::random_poly(rng, F, 6);
            CHECK(fqpoly_from_json(F, to_json(a)) == a);

            RatFunc r(testutil::random_poly(rng, F, 4), testutil::random_nonzero_poly(rng, F, 4));
            CHECK(ratfunc_from_json(F, to_json(r)) == r);

            LSeries s = testutil::random_laurent(rng, F, -5, 5, 9);
            CHECK(series_from_json<FqElem>(F, series_to_json(s)) == s);
        }
        // exact series keep the exact marker
        LSeries mono = LSeries::monomial(Var::inv_theta, -3, FqElem(F, 1));
        CHECK(series_from_json<FqElem>(F, series_to_json(mono)) == mono);
    }
}

TEST_CASE("nested series and twisted operators round-trip") {
    const Fq& F = Fq::get(3, 1);
    testutil::Rng rng(99);
    // u-series with Laurent coefficients
    USeries u = USeries::zero(Var::u, 7);
    for (int k = 0; k < 6; ++k)
        if (rng.below(2)) u = u + USeries::monomial(Var::u, k, testutil::random_laurent(rng, F, -2, 2, 5), 7);
    CHECK(series_from_json<LSeries>(F, series_to_json(u)) == u);

    // Ore operators over K and over Laurent coefficients
    std::vector<RatFunc> c;
    for (int i = 0; i < 4; ++i)
        c.push_back(RatFunc(testutil::random_poly(rng, F, 3), testutil::random_nonzero_poly(rng, F, 2)));
    Twisted<RatFunc> f(std::move(c), 6);
    CHECK(twisted_from_json<RatFunc>(F, twisted_to_json(f)) == f);

    std::vector<LSeries> lc;
    for (int i = 0; i < 3; ++i) lc.push_back(testutil::random_laurent(rng, F, -3, 3, 6));
    Twisted<LSeries> g(std::move(lc), 5);
    CHECK(twisted_from_json<LSeries>(F, twisted_to_json(g)) == g);
}

TEST_CASE("newton polygon serialization") {
    NewtonPolygon np = newton_polygon({{0, Rational(3)}, {1, Rational(0)}, {4, Rational(0)}});
    json j = to_json(np);
    CHECK(j["sides"].size() == 2);
    CHECK(j["sides"][0]["slope"] == json(-3));
    CHECK(j["sides"][1]["length"] == json(3));
}
