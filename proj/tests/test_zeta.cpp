#include "doctest.h"

#include <random>

#include "nhpoly/errors.hpp"
#include "nhpoly/zeta.hpp"

using namespace nhpoly;

namespace {

LaurentPoly make_poly(int n, std::vector<std::vector<i64>> exps) {
    LaurentPoly f;
    f.n = n;
    for (auto& e : exps) f.terms.push_back(LaurentTerm{std::move(e), {1}});
    return f;
}

CyclotomicInt random_cyclo(i64 p, std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(-9, 9);
    CyclotomicInt c(p);
    for (i64 i = 0; i + 1 < p; ++i) c[i] = dist(rng);
    return c;
}

} // namespace

TEST_CASE("trace profiles of small sums") {
    // x1 + x2 over F_3: sums over {1,2}^2 are {2,0,0,1}
    auto prof = trace_counts(make_poly(2, {{1, 0}, {0, 1}}), 3, 1, 1);
    CHECK(prof.counts == std::vector<mpz_class>{2, 1, 1});

    // f = x over F_{2^k}: 2^{k-1}-1 zeros, 2^{k-1} ones
    for (int k : {1, 2, 3, 6}) {
        auto pr = trace_counts(make_poly(1, {{1}}), 2, 1, k);
        i64 half = i64(1) << (k - 1);
        CHECK(pr.counts == std::vector<mpz_class>{half - 1, half});
    }

    // x^3 + y^3 + (xy)^{-1} over F_2: single торus point (1,1), value 1
    auto kp = trace_counts(make_poly(2, {{3, 0}, {0, 3}, {-1, -1}}), 2, 1, 1);
    CHECK(kp.counts == std::vector<mpz_class>{0, 1});
}

TEST_CASE("diagonal factorization equals full enumeration") {
    auto f = make_poly(2, {{2, 0}, {0, 3}});
    for (int k = 1; k <= 3; ++k) {
        for (i64 p : {3, 5, 7}) {
            ZetaConfig full;
            full.force_full_enumeration = true;
            auto a = trace_counts(f, p, 1, k);
            auto b = trace_counts(f, p, 1, k, full);
            CHECK(a.counts == b.counts);
        }
    }
}

TEST_CASE("exponential sums reduce to the power basis") {
    TraceProfile p2{2, {mpz_class(5), mpz_class(3)}};
    CHECK(exp_sum(p2)[0] == 2); // a - b

    TraceProfile p3u{3, {mpz_class(4), mpz_class(4), mpz_class(4)}};
    auto s = exp_sum(p3u);
    CHECK(s[0] == -4); // uniform profile collapses to -c
    CHECK(s[1] == 0);

    TraceProfile p3{3, {mpz_class(2), mpz_class(1), mpz_class(1)}};
    auto t = exp_sum(p3);
    CHECK(t[0] == 1); // 2 + zeta + zeta^2 = 1
    CHECK(t[1] == 0);
}

TEST_CASE("cyclotomic ring axioms hold on random elements") {
    std::mt19937 rng(12345);
    for (i64 p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 25; ++trial) {
            auto a = random_cyclo(p, rng);
            auto b = random_cyclo(p, rng);
            auto c = random_cyclo(p, rng);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            // conjugation is a ring automorphism
            for (i64 t = 1; t < p; ++t) {
                CHECK(a.conjugate(t) * b.conjugate(t) == (a * b).conjugate(t));
                CHECK(a.conjugate(t) + b.conjugate(t) == (a + b).conjugate(t));
            }
        }
    }
}

TEST_CASE("pi-adic valuation") {
    for (i64 p : {2, 3, 5, 7}) {
        CHECK(pi_valuation(CyclotomicInt::from_int(p, p)) == p - 1);
        CHECK(pi_valuation(CyclotomicInt::from_int(p, 1)) == 0);
        CHECK_FALSE(pi_valuation(CyclotomicInt(p)).has_value());
        if (p > 2) {
            CyclotomicInt pi(p); // 1 - zeta
            pi[0] = 1;
            pi[1] = -1;
            CHECK(pi_valuation(pi) == 1);
            CyclotomicInt unit(p); // 1 + zeta + ... + zeta^{p-2} = -zeta^{p-1}
            for (i64 i = 0; i + 1 < p; ++i) unit[i] = 1;
            CHECK(pi_valuation(unit) == 0);
        }
    }
}

TEST_CASE("valuation is additive on products") {
    std::mt19937 rng(999);
    for (i64 p : {3, 5}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_cyclo(p, rng);
            auto b = random_cyclo(p, rng);
            auto va = pi_valuation(a), vb = pi_valuation(b);
            if (!va || !vb) continue;
            CHECK(pi_valuation(a * b) == *va + *vb);
        }
    }
}

TEST_CASE("l-polynomial coefficients by the exponential recurrence") {
    // S_k = -1 for all k, n = 1: exp(-sum T^k/k) = 1 - T
    std::vector<CyclotomicInt> s;
    for (int k = 0; k < 5; ++k) s.push_back(CyclotomicInt::from_int(2, -1));
    auto c = l_poly_coeffs(s, 1);
    CHECK(c[0][0] == 1);
    CHECK(c[1][0] == -1);
    for (int i = 2; i <= 5; ++i) CHECK(c[i].is_zero());

    // all-zero sums give all-zero coefficients
    std::vector<CyclotomicInt> z(4, CyclotomicInt(3));
    auto cz = l_poly_coeffs(z, 2);
    for (int i = 1; i <= 4; ++i) CHECK(cz[i].is_zero());
}

TEST_CASE("newton polygon of the torus line") {
    // f = x: L = 1 - T, slope {0}
    auto r = newton_polygon(make_poly(1, {{1}}), 3, 1);
    CHECK(r.degree == 1);
    CHECK(r.polygon.slope_multiset() == std::vector<Rat>{Rat(0)});
}

TEST_CASE("newton polygon of x^3 at supersingular and ordinary primes") {
    auto f = make_poly(1, {{3}});
    auto r5 = newton_polygon(f, 5, 1);
    CHECK(r5.degree == 3);
    CHECK(r5.polygon.slope_multiset() ==
          std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1, 2)});
    auto r7 = newton_polygon(f, 7, 1);
    CHECK(r7.polygon.slope_multiset() ==
          std::vector<Rat>{Rat(0), Rat(1, 3), Rat(2, 3)});
}

TEST_CASE("newton polygon of the classical Kloosterman surface sum") {
    // K^2_{2,(1,1)} over F_3: degree 3, ordinary (D* = 1)
    auto f = make_poly(2, {{1, 0}, {0, 1}, {-1, -1}});
    auto r = newton_polygon(f, 3, 1);
    CHECK(r.degree == 3);
    CHECK(r.polygon.slope_multiset() == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
}

TEST_CASE("diagonal engine path matches forced full enumeration") {
    auto f = make_poly(2, {{2, 0}, {0, 3}});
    for (i64 p : {5, 7}) {
        ZetaConfig full;
        full.force_full_enumeration = true;
        full.eval_budget = 5e9;
        auto a = newton_polygon(f, p, 1);
        auto b = newton_polygon(f, p, 1, full);
        CHECK(a.degree == b.degree);
        CHECK(a.valuations == b.valuations);
        CHECK(a.polygon == b.polygon);
    }
}

TEST_CASE("results are invariant under modulus choice and thread count") {
    auto f = make_poly(2, {{1, 0}, {0, 1}, {-1, -1}});
    ZetaConfig alt;
    alt.modulus_index = 1;
    ZetaConfig threaded;
    threaded.threads = 4;
    auto a = newton_polygon(f, 5, 1);
    auto b = newton_polygon(f, 5, 1, alt);
    auto c = newton_polygon(f, 5, 1, threaded);
    CHECK(a.valuations == b.valuations);
    CHECK(a.valuations == c.valuations);
    CHECK(a.polygon == b.polygon);
    CHECK(a.polygon == c.polygon);
}

TEST_CASE("budget violations are reported") {
    auto f = make_poly(2, {{1, 0}, {0, 1}, {-1, -1}});
    ZetaConfig tiny;
    tiny.eval_budget = 10;
    CHECK_THROWS_AS(trace_counts(f, 5, 1, 2, tiny), BudgetExceeded);
}
