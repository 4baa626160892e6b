#include <doctest.h>

#include <random>

#include "galindex/scalar.hpp"

using namespace galindex;

TEST_CASE("integer arithmetic embeds") {
    const PadicScalar a(2, 8, 3), b(2, 8, 5);
    const PadicScalar s = a + b;
    CHECK(s.eq_to_min_precision(PadicScalar(2, 8, 8)));
    CHECK(s.valuation() == Val::certain(3));
}

TEST_CASE("zero is neutral") {
    const PadicScalar x(3, 5, 17), z = PadicScalar::zero(3, 5);
    CHECK((x + z).eq_to_min_precision(x));
    CHECK((x + z).valuation() == x.valuation());
}

TEST_CASE("halves add to one") {
    const PadicScalar half = PadicScalar::with_denominator(2, 8, 1, 1);
    const PadicScalar s = half + half;
    CHECK(s.is_integral());
    CHECK(s.eq_to_min_precision(PadicScalar::one(2, 8)));
}

TEST_CASE("modular inverse") {
    const PadicScalar two(5, 6, 2);
    const PadicScalar inv = two.inv();
    CHECK(inv.is_integral());
    CHECK((two * inv).eq_to_min_precision(PadicScalar::one(5, 6)));
    // (5^6 + 1)/2
    CHECK(inv.mantissa() == mpz_class(7813));
}

TEST_CASE("inverse of the prime picks up a denominator") {
    const PadicScalar three(3, 4, 3);
    const PadicScalar inv = three.inv();
    CHECK(inv.denom_exp() == 1);
    CHECK(inv.mantissa() == 1);
    CHECK(inv.valuation() == Val::certain(-1));
}

TEST_CASE("inverse of zero fails") {
    CHECK_THROWS_AS(PadicScalar::zero(2, 4).inv(), NotInvertibleToPrecision);
}

TEST_CASE("valuations") {
    CHECK(PadicScalar(2, 10, 12).valuation() == Val::certain(2));
    CHECK(PadicScalar::with_denominator(3, 8, 1, 2).valuation() == Val::certain(-2));
    const Val v = PadicScalar(2, 5, 32).valuation();
    CHECK(!v.exact);
    CHECK(v.value == 5);
}

TEST_CASE("prime mismatch is rejected") {
    CHECK_THROWS_AS(PadicScalar(2, 8, 1) + PadicScalar(3, 8, 1), PrimeMismatch);
}

TEST_CASE("ring laws on random values") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned long p = trial % 2 ? 2 : 5;
        auto rnd = [&]() {
            const long m = (long)(rng() % 4000) - 2000;
            return PadicScalar(p, 24, m);
        };
        const PadicScalar a = rnd(), b = rnd(), c = rnd();
        CHECK(((a + b) * c).eq_to_min_precision(a * c + b * c));
        CHECK((a * b).eq_to_min_precision(b * a));
        CHECK((a - a).is_zero_to_precision());
        const Val va = a.valuation(), vb = b.valuation(), vab = (a * b).valuation();
        if (va.exact && vb.exact) {
            CHECK(vab.exact);
            CHECK(vab.value == va.value + vb.value);
        }
    }
}

TEST_CASE("recomputation at doubled precision is stable") {
    for (const long m : {12L, -56L, 700L, 31L}) {
        const PadicScalar a(2, 16, m), b(2, 32, m);
        CHECK(a.valuation() == b.valuation());
        CHECK((a * a).valuation() == (b * b).valuation());
    }
}
