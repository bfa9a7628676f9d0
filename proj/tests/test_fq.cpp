#include <doctest.h>

#include <set>

#include "carlitz/fq_poly.hpp"
#include "test_util.hpp"

using namespace carlitz;

TEST_CASE("field construction") {
    const Fq& F2 = Fq::get(2, 1);
    CHECK(F2.q == 2);
    CHECK(F2.modulus == std::vector<int>{0, 1});  // x

    const Fq& F3 = Fq::get(3, 1);
    CHECK(F3.q == 3);

    // the only irreducible quadratic over F_2 is x^2 + x + 1
    const Fq& F4 = Fq::get(2, 2);
    CHECK(F4.modulus == std::vector<int>{1, 1, 1});

    CHECK_THROWS_AS(Fq::get(4, 1), NonPrimeCharacteristic);
    CHECK_THROWS_AS(Fq::get(2, 0), UnsupportedSize);
}

TEST_CASE("field axioms on random triples") {
    for (int q_case = 0; q_case < 4; ++q_case) {
        const Fq& F = q_case == 0   ? Fq::get(2, 1)
                      : q_case == 1 ? Fq::get(3, 1)
                      : q_case == 2 ? Fq::get(2, 2)
                                    : Fq::get(3, 2);
        testutil::Rng rng(17 + q_case);
        for (int it = 0; it < 200; ++it) {
            FqElem a = testutil::random_elem(rng, F);
            FqElem b = testutil::random_elem(rng, F);
            FqElem c = testutil::random_elem(rng, F);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == FqElem(F, 0));
            if (!b.is_zero()) CHECK(b * b.inverse() == FqElem(F, 1));
        }
        // Frobenius fixes exactly the prime subfield elements' p-th powers
        for (int x = 0; x < F.q; ++x) {
            FqElem a(F, x);
            CHECK(a.pow(F.q) == a);
        }
    }
}

TEST_CASE("polynomial ring ops") {
    const Fq& F3 = Fq::get(3, 1);
    FqPoly th = FqPoly::theta(F3);
    FqPoly one = FqPoly::one(F3);
    CHECK((th + one) * (th - one) == th * th - one);  // (θ+1)(θ-1) = θ²-1

    const Fq& F2 = Fq::get(2, 1);
    FqPoly a2 = FqPoly(F2, {1, 1});  // θ+1
    CHECK(a2.frobenius() == FqPoly(F2, {1, 0, 1}));  // θ²+1

    // |θ²+θ| = q²: degree 2
    CHECK(FqPoly(F2, {0, 1, 1}).deg() == 2);
    CHECK(FqPoly::zero(F2).deg() == -1);
}

TEST_CASE("divmod and gcd") {
    const Fq& F = Fq::get(3, 1);
    testutil::Rng rng(5);
    for (int it = 0; it < 100; ++it) {
        FqPoly a = testutil::random_poly(rng, F, 8);
        FqPoly b = testutil::random_nonzero_poly(rng, F, 5);
        auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.deg() < b.deg());
        FqPoly g = testutil::random_nonzero_poly(rng, F, 3);
        FqPoly gg = gcd(a * g, b * g);
        CHECK((gg % g).is_zero());
        CHECK(gg.is_monic());
    }
    CHECK_THROWS_AS(divmod(FqPoly::one(F), FqPoly::zero(F)), DivisionByZeroPoly);
}

TEST_CASE("frobenius is an F_p-algebra endomorphism") {
    for (int qi : {2, 3, 5}) {
        const Fq& F = Fq::get(qi, 1);
        testutil::Rng rng(23 + qi);
        for (int it = 0; it < 50; ++it) {
            FqPoly a = testutil::random_poly(rng, F, 6);
            FqPoly b = testutil::random_poly(rng, F, 6);
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
            CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
            CHECK(a.frobenius() == a.pow(F.q));
        }
    }
}

TEST_CASE("ultrametric degree rules") {
    const Fq& F = Fq::get(3, 1);
    testutil::Rng rng(99);
    for (int it = 0; it < 100; ++it) {
        FqPoly a = testutil::random_nonzero_poly(rng, F, 7);
        FqPoly b = testutil::random_nonzero_poly(rng, F, 7);
        CHECK((a * b).deg() == a.deg() + b.deg());
        if (!(a + b).is_zero()) CHECK((a + b).deg() <= std::max(a.deg(), b.deg()));
    }
}

TEST_CASE("monic enumeration") {
    const Fq& F2 = Fq::get(2, 1);
    auto d0 = monic_list(F2, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0] == FqPoly::one(F2));

    auto d1 = monic_list(F2, 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == FqPoly::theta(F2));
    CHECK(d1[1] == FqPoly(F2, {1, 1}));

    const Fq& F3 = Fq::get(3, 1);
    auto d2 = monic_list(F3, 2);
    CHECK(d2.size() == 9);
    std::set<std::string> seen;
    for (auto& a : d2) {
        CHECK(a.is_monic());
        CHECK(a.deg() == 2);
        seen.insert(a.str());
    }
    CHECK(seen.size() == 9);
}

TEST_CASE("polynomial evaluation") {
    const Fq& F = Fq::get(5, 1);
    FqPoly a(F, {1, 2, 3});  // 1 + 2θ + 3θ²
    CHECK(a.eval(FqElem(F, 2)) == FqElem(F, (1 + 4 + 12) % 5));
}

TEST_CASE("subfield embedding") {
    const Fq& F2 = Fq::get(2, 1);
    const Fq& F4 = Fq::get(2, 2);
    auto& emb = F4.embedding_from(F2);
    CHECK(emb.map[0] == 0);
    CHECK(emb.map[1] == 1);
    CHECK(emb.in_im[0]);
    CHECK(emb.in_im[1]);

    const Fq& F16 = Fq::get(2, 4);
    auto& emb4 = F16.embedding_from(F4);
    // the image is a field of 4 elements, closed under multiplication
    int count = 0;
    for (int x = 0; x < F16.q; ++x) count += emb4.in_im[x];
    CHECK(count == 4);
    for (int a = 0; a < F4.q; ++a)
        for (int b = 0; b < F4.q; ++b) {
            int lhs = emb4.map[F4.mul(a, b)];
            int rhs = F16.mul(emb4.map[a], emb4.map[b]);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("rational functions") {
    const Fq& F = Fq::get(3, 1);
    testutil::Rng rng(7);
    for (int it = 0; it < 60; ++it) {
        RatFunc a(testutil::random_poly(rng, F, 4), testutil::random_nonzero_poly(rng, F, 4));
        RatFunc b(testutil::random_poly(rng, F, 4), testutil::random_nonzero_poly(rng, F, 4));
        CHECK(a + b - b == a);
        if (!b.is_zero()) CHECK(a * b / b == a);
        CHECK(a.den.is_monic());
        CHECK(gcd(a.num, a.den).deg() <= 0);
    }
}
