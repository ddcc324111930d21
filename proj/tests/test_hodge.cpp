#include "doctest.h"

#include <numeric>

#include "family_support.hpp"
#include "nhpoly/errors.hpp"
#include "nhpoly/hodge.hpp"
#include "nhpoly/intmath.hpp"

using namespace nhpoly;
using namespace nhpoly::testsup;

TEST_CASE("weight numbers of the diagonal simplex") {
    for (i64 m : {3, 4}) {
        auto p = hull_facets(diag_support({m, m}), 2);
        auto w = weight_numbers(p);
        for (i64 k = 0; k <= 2 * m; ++k) CHECK(w.at(k) == k + 1);
    }
}

TEST_CASE("weight numbers of the equilateral Kloosterman polytope") {
    for (i64 m : {2, 3, 4}) {
        auto p = hull_facets(kloosterman_support({m, m}, 2), 2);
        auto w = weight_numbers(p);
        CHECK(w.at(m) == m + 2);
    }
}

TEST_CASE("weight numbers of the full reflection diamond") {
    // the published table lists 4(m+1) and 4(m+3) at k = m, m+1; the lattice
    // count is 4k throughout
    for (i64 m : {2, 3}) {
        auto p = hull_facets(reflection_support({m, m}, 2), 2);
        auto w = weight_numbers(p);
        CHECK(w.at(0) == 1);
        for (i64 k = 1; k <= 2 * m; ++k) CHECK(w.at(k) == 4 * k);
    }
}

TEST_CASE("hodge numbers: diagonal coprime vanishes at D") {
    for (auto [m1, m2] : std::vector<std::pair<i64, i64>>{{2, 3}, {3, 5}}) {
        auto p = hull_facets(diag_support({m1, m2}), 2);
        auto h = hodge_numbers(weight_numbers(p), 2);
        CHECK(h.numbers[m1 * m2] == 0);
        CHECK(h.numbers[2 * m1 * m2] == 0);
    }
}

TEST_CASE("hodge numbers: equilateral diagonal peak") {
    for (i64 m : {2, 4, 5}) {
        auto p = hull_facets(diag_support({m, m}), 2);
        auto h = hodge_numbers(weight_numbers(p), 2);
        CHECK(h.numbers[m] == m - 1);
    }
}

TEST_CASE("hodge_numbers demands enough range") {
    WeightVector w;
    w.D = 3;
    w.counts = {1, 1, 1}; // covers k <= 2 < nD = 6
    CHECK_THROWS_AS(hodge_numbers(w, 2), InsufficientRange);
}

TEST_CASE("hodge polygon vertices and slopes") {
    {
        auto p = hull_facets(diag_support({2, 2}), 2);
        auto poly = hodge_polygon(hodge_numbers(weight_numbers(p), 2));
        std::vector<std::pair<Rat, Rat>> want = {
            {Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(3), Rat(1)}, {Rat(4), Rat(2)}};
        CHECK(poly.vertices == want);
    }
    {
        auto p = hull_facets(kloosterman_support({1, 1}, 2), 2);
        auto poly = hodge_polygon(hodge_numbers(weight_numbers(p), 2));
        auto ms = poly.slope_multiset();
        CHECK(ms == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
    }
    {
        auto p = hull_facets(reflection_support({1, 1}, 1), 2);
        auto poly = hodge_polygon(hodge_numbers(weight_numbers(p), 2));
        auto ms = poly.slope_multiset();
        CHECK(ms == std::vector<Rat>{Rat(0), Rat(1)});
    }
}

TEST_CASE("equilateral diagonal closed forms") {
    CHECK(diag_equilateral_W(2, 5, 3) == 4);
    CHECK(diag_equilateral_H(2, 4, 4) == 3);
    CHECK(diag_equilateral_W(0, 3, 0) == 1);
    CHECK(diag_equilateral_W(0, 3, 2) == 0);
    auto p = hull_facets(diag_support({2, 2, 2}), 3);
    auto w = weight_numbers(p);
    for (i64 k = 0; k <= w.k_max(); ++k)
        CHECK(w.at(k) == diag_equilateral_W(3, 2, k));
    auto h = hodge_numbers(w, 3);
    for (i64 k = 0; k <= 6; ++k)
        CHECK(h.numbers[k] == diag_equilateral_H(3, 2, k));
}

TEST_CASE("popoviciu closed form") {
    CHECK(popoviciu_W(3, 5, 0) == 1);
    CHECK(popoviciu_W(3, 5, 1) == 0);
    CHECK(popoviciu_W(3, 5, 15) == 2);
    CHECK_THROWS_AS(popoviciu_W(4, 6, 3), NotCoprime);
    // against the enumerator
    for (auto [m1, m2] : std::vector<std::pair<i64, i64>>{{2, 3}, {3, 5}, {1, 4}}) {
        auto p = hull_facets(diag_support({m1, m2}), 2);
        auto w = weight_numbers(p);
        for (i64 k = 0; k <= w.k_max(); ++k) CHECK(w.at(k) == popoviciu_W(m1, m2, k));
    }
}

TEST_CASE("reflection closed form, equilateral") {
    for (i64 m : {1, 2, 3}) {
        auto p = hull_facets(reflection_support({m, m}, 1), 2);
        auto w = weight_numbers(p);
        for (i64 k = 0; k <= w.k_max(); ++k) {
            CHECK(w.at(k) == reflection_W(2, {m, m}, 1, k));
            CHECK(reflection_W(2, {m, m}, 1, k) == 2 * k + 1);
        }
    }
}

TEST_CASE("reflection recursion, general exponents") {
    // j = 1 aligned: 2 W0(k) - 1 exactly at multiples of m1, 2 W0(k) elsewhere
    for (i64 k = 0; k <= 12; ++k) {
        i64 w0 = popoviciu_W(2, 3, k);
        i64 expected = 2 * w0 - (k % 2 == 0 ? 1 : 0);
        CHECK(reflection_W(2, {2, 3}, 1, k) == expected);
    }
    CHECK(reflection_W(2, {2, 3}, 1, 6) == 2 * popoviciu_W(2, 3, 6) - 1);
    CHECK(reflection_W(2, {2, 3}, 2, 6) == 4 * popoviciu_W(2, 3, 6) - 4);
    CHECK(reflection_W(2, {2, 3}, 2, 12) == 4 * popoviciu_W(2, 3, 12) - 4);

    // against the enumerator, including a non-coprime tuple that exercises
    // the enumerator base case of the recursion
    for (std::vector<i64> m : {std::vector<i64>{2, 3}, {2, 4}, {2, 3, 4}}) {
        const int n = (int)m.size();
        for (int j = 0; j <= n; ++j) {
            auto p = hull_facets(reflection_support(m, j), n);
            auto w = weight_numbers(p);
            for (i64 k = 0; k <= w.k_max(); ++k)
                CHECK(w.at(k) == reflection_W(n, m, j, k));
        }
    }
}

TEST_CASE("reflection recursion holds for raw enumerator outputs") {
    // W_{G^j}(k) = 2 W_{G^{j-1}}(k) - [aligned] W over the tuple without m_j
    std::vector<i64> m = {2, 3};
    auto wj = weight_numbers(hull_facets(reflection_support(m, 1), 2));
    auto wj0 = weight_numbers(hull_facets(diag_support(m), 2));
    auto wdrop = weight_numbers(hull_facets(diag_support({3}), 1), 12);
    i64 D = 6, Ddrop = 3;
    for (i64 k = 0; k <= wj.k_max(); ++k) {
        i64 sub = (k * Ddrop) % D == 0 ? wdrop.at(k * Ddrop / D) : 0;
        CHECK(wj.at(k) == 2 * wj0.at(k) - sub);
    }
}

TEST_CASE("kloosterman equilateral closed form") {
    for (i64 m : {2, 3, 4}) {
        CHECK(kloosterman_equilateral_W(2, m, 2, m + 1) == m + 4);
        CHECK(kloosterman_equilateral_W(3, m, 3, 2 * m) - binom(2 * m + 2, 2) ==
              3 * m + 1);
        CHECK(kloosterman_equilateral_W(3, m, 3, 3 * m) - binom(3 * m + 2, 2) ==
              9 * m + 1);
    }
    CHECK_THROWS_AS(kloosterman_equilateral_W(2, 3, 2, 7), OutOfRange);
    // against the enumerator for all 1 <= j <= n <= 3
    for (int n = 1; n <= 3; ++n) {
        for (int j = 1; j <= n; ++j) {
            for (i64 m : {1, 2, 3}) {
                std::vector<i64> mv(n, m);
                auto p = hull_facets(kloosterman_support(mv, j), n);
                auto w = weight_numbers(p);
                for (i64 k = 0; k <= n * m; ++k)
                    CHECK(w.at(k) == kloosterman_equilateral_W(n, m, j, k));
            }
        }
    }
}

TEST_CASE("kloosterman 2d closed form on distinct primes") {
    CHECK(kloosterman_2d_W(2, 3, 2, 6) == 3);
    CHECK(kloosterman_2d_W(2, 3, 2, 12) == 6);
    CHECK(kloosterman_2d_W(2, 3, 2, 7) == popoviciu_W(2, 3, 7));
    CHECK_THROWS_AS(kloosterman_2d_W(4, 3, 2, 0), OutsideValidityDomain);
    CHECK_THROWS_AS(kloosterman_2d_W(3, 3, 2, 0), OutsideValidityDomain);
    CHECK_THROWS_AS(kloosterman_2d_W(1, 3, 1, 0), OutsideValidityDomain);
    for (auto [m1, m2] : std::vector<std::pair<i64, i64>>{{2, 3}, {3, 5}, {5, 2}}) {
        for (int j : {1, 2}) {
            auto p = hull_facets(kloosterman_support({m1, m2}, j), 2);
            auto w = weight_numbers(p, 2 * m1 * m2 + 2 * m1 * m2);
            for (i64 k = 0; k <= 2 * m1 * m2; ++k)
                CHECK(w.at(k) == kloosterman_2d_W(m1, m2, j, k));
        }
    }
}

TEST_CASE("published gcd correction overcounts") {
    // (4,3) at k = 14: gcd(14,12) = 2 fires, but no lattice point appears
    CHECK(kloosterman_2d_correction_published(4, 3, 2, 14) == 1);
    auto p = hull_facets(kloosterman_support({4, 3}, 2), 2);
    auto w = weight_numbers(p, 24);
    CHECK(w.at(14) - popoviciu_W(4, 3, 14) == 0);
    // j = 1 at (2,3), k = 9: gcd(9,6) = 3 fires, but only multiples of m1
    // gain a point
    CHECK(kloosterman_2d_correction_published(2, 3, 1, 9) == 1);
    auto p1 = hull_facets(kloosterman_support({2, 3}, 1), 2);
    auto w1 = weight_numbers(p1, 12);
    CHECK(w1.at(9) - popoviciu_W(2, 3, 9) == 0);
}

TEST_CASE("mass formula: hodge numbers sum to the normalized volume") {
    auto check_mass = [](const std::vector<LatticePoint>& support, int n) {
        auto p = hull_facets(support, n);
        auto h = hodge_numbers(weight_numbers(p), n);
        i64 sum = std::accumulate(h.numbers.begin(), h.numbers.end(), i64(0));
        CHECK(sum == normalized_volume(p));
    };
    check_mass(diag_support({2, 3}), 2);
    check_mass(reflection_support({2, 3}, 2), 2);
    check_mass(kloosterman_support({2, 3}, 2), 2);
    check_mass(kloosterman_support({2, 2, 2}, 3), 3);
    check_mass(kloosterman_support({2, 3, 4}, 2), 3);
}

TEST_CASE("hodge polygon endpoint") {
    auto p = hull_facets(kloosterman_support({2, 3}, 2), 2);
    auto h = hodge_numbers(weight_numbers(p), 2);
    auto poly = hodge_polygon(h);
    i64 vol = normalized_volume(p);
    CHECK(poly.endpoint().first == Rat(vol));
    Rat want_y(0);
    for (i64 k = 0; k < (i64)h.numbers.size(); ++k)
        want_y += Rat(k * h.numbers[k], h.D);
    CHECK(poly.endpoint().second == want_y);
}

TEST_CASE("diagonal equilateral HP vertex closed form") {
    // the cumulative-sum formulas reproduce points on the polygon and every
    // polygon vertex appears among them
    for (int n : {2, 3}) {
        for (i64 m : {2, 3, 5}) {
            std::vector<i64> mv(n, m);
            auto p = hull_facets(diag_support(mv), n);
            auto h = hodge_numbers(weight_numbers(p), n);
            auto poly = hodge_polygon(h);
            std::vector<std::pair<Rat, Rat>> formula_pts;
            formula_pts.emplace_back(Rat(0), Rat(0));
            for (i64 j = 0; j <= n * m; ++j) {
                i64 xj = 0;
                Rat yj(0);
                for (i64 i = 0; i <= j / m; ++i) {
                    i64 sgn = (i % 2 == 0) ? 1 : -1;
                    xj += sgn * binom(n, i) * binom(n + j - i * m, n);
                    yj += Rat(sgn) * Rat(binom(n, i)) *
                          (Rat(n * binom(n + j - i * m, n + 1), m) +
                           Rat(i * binom(n + j - i * m, n)));
                }
                formula_pts.emplace_back(Rat(xj), yj);
                CHECK(poly.value_at(Rat(xj)) == yj);
            }
            for (const auto& v : poly.vertices) {
                bool found = false;
                for (const auto& q : formula_pts) found = found || q == v;
                CHECK(found);
            }
        }
    }
}
