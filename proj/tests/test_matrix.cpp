#include <doctest.h>

#include <random>

#include "galindex/matrix.hpp"

using namespace galindex;

namespace {

ScalarMatrix from_ints(unsigned long p, unsigned prec, std::vector<std::vector<long>> rows) {
    ScalarMatrix m(rows.size(), rows[0].size(), PadicScalar::zero(p, prec));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = PadicScalar(p, prec, rows[i][j]);
    return m;
}

ScalarMatrix random_matrix(std::mt19937& rng, unsigned long p, unsigned prec, size_t n) {
    ScalarMatrix m(n, n, PadicScalar::zero(p, prec));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m.at(i, j) = PadicScalar(p, prec, (long)(rng() % 2000) - 1000);
    return m;
}

// product of unit-diagonal triangular matrices: determinant valuation 0
ScalarMatrix random_unimodular(std::mt19937& rng, unsigned long p, unsigned prec, size_t n) {
    ScalarMatrix lo = ScalarMatrix::identity(n, PadicScalar::zero(p, prec));
    ScalarMatrix up = ScalarMatrix::identity(n, PadicScalar::zero(p, prec));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i > j)
                lo.at(i, j) = PadicScalar(p, prec, (long)(rng() % 200) - 100);
            if (i < j)
                up.at(i, j) = PadicScalar(p, prec, (long)(rng() % 200) - 100);
        }
    return lo * up;
}

} // namespace

TEST_CASE("determinant valuation of the identity") {
    const auto id = ScalarMatrix::identity(3, PadicScalar::zero(2, 10));
    CHECK(det_valuation(id) == 0);
}

TEST_CASE("2x2 hand determinant") {
    CHECK(det_valuation(from_ints(2, 10, {{1, 1}, {1, -1}})) == 1);
}

TEST_CASE("precision margin on diag(3,3)") {
    CHECK_THROWS_AS(det_valuation(from_ints(3, 2, {{3, 0}, {0, 3}})), PrecisionExhausted);
    CHECK(det_valuation(from_ints(3, 4, {{3, 0}, {0, 3}})) == 2);
    CHECK(det_valuation(from_ints(3, 8, {{3, 0}, {0, 3}})) == 2);
}

TEST_CASE("determinant of a singular matrix is exhausted") {
    CHECK_THROWS_AS(det_valuation(from_ints(2, 12, {{1, 1}, {1, 1}})), PrecisionExhausted);
}

TEST_CASE("smith form of a diagonal matrix") {
    const auto s = smith_form(from_ints(5, 12, {{1, 0, 0}, {0, 5, 0}, {0, 0, 25}}));
    CHECK(s.full_rank_certified);
    CHECK(s.pivots == std::vector<long>{0, 1, 2});
}

TEST_CASE("smith form by hand elimination") {
    const auto s = smith_form(from_ints(2, 12, {{1, 1}, {1, -1}}));
    CHECK(s.pivots == std::vector<long>{0, 1});
}

TEST_CASE("smith form of the zero matrix is flagged") {
    const auto s = smith_form(from_ints(2, 6, {{0, 0}, {0, 0}}));
    CHECK(s.rank == 0);
    CHECK(!s.full_rank_certified);
}

TEST_CASE("smith rejects non-integral entries") {
    ScalarMatrix m(1, 1, PadicScalar::with_denominator(2, 8, 1, 1));
    CHECK_THROWS_AS(smith_form(m), InputError);
}

TEST_CASE("determinant equals the sum of smith pivots") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned long p = trial % 2 ? 2 : 3;
        const size_t n = 2 + trial % 3;
        const ScalarMatrix m = random_matrix(rng, p, 30, n);
        long dv;
        try {
            dv = det_valuation(m);
        } catch (const PrecisionExhausted&) {
            continue;
        }
        const auto s = smith_form(m);
        REQUIRE(s.full_rank_certified);
        long sum = 0;
        for (const long piv : s.pivots)
            sum += piv;
        CHECK(dv == sum);

        // factorization U S V reproduces the input to precision
        ScalarMatrix smat(n, n, PadicScalar::zero(p, 30));
        for (size_t i = 0; i < n; ++i)
            smat.at(i, i) = PadicScalar::one(p, 30).shift(s.pivots[i]);
        const ScalarMatrix back = s.U * smat * s.V;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                CHECK(back.at(i, j).eq_to_min_precision(m.at(i, j)));
        // V_inv really inverts V
        const ScalarMatrix vv = s.V * s.V_inv;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                CHECK(vv.at(i, j).eq_to_min_precision(
                    PadicScalar(p, 30, i == j ? 1 : 0)));
    }
}

TEST_CASE("determinant valuation is invariant under unimodular factors") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const unsigned long p = trial % 2 ? 2 : 5;
        const size_t n = 2 + trial % 2;
        const ScalarMatrix m = random_matrix(rng, p, 30, n);
        const ScalarMatrix u = random_unimodular(rng, p, 30, n);
        long dv;
        try {
            dv = det_valuation(m);
        } catch (const PrecisionExhausted&) {
            continue;
        }
        CHECK(det_valuation(u) == 0);
        CHECK(det_valuation(m * u) == dv);
        CHECK(det_valuation(u * m) == dv);
    }
}

TEST_CASE("certified results are stable under doubled precision") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<long>> rows(3, std::vector<long>(3));
        for (auto& r : rows)
            for (auto& x : r)
                x = (long)(rng() % 100) - 50;
        long lo, hi;
        try {
            lo = det_valuation(from_ints(3, 20, rows));
        } catch (const PrecisionExhausted&) {
            continue;
        }
        hi = det_valuation(from_ints(3, 40, rows));
        CHECK(lo == hi);
    }
}

TEST_CASE("linear solve") {
    const ScalarMatrix a = from_ints(2, 20, {{2, 1}, {0, 1}});
    std::vector<PadicScalar> b{PadicScalar(2, 20, 1), PadicScalar(2, 20, 1)};
    const auto x = solve_linear(a, b);
    // 2 x0 + x1 = 1, x1 = 1 -> x0 = 0
    CHECK(x[0].is_zero_to_precision());
    CHECK(x[1].eq_to_min_precision(PadicScalar(2, 20, 1)));
}
