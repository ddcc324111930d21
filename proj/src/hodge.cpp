#include "nhpoly/hodge.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "nhpoly/errors.hpp"
#include "nhpoly/intmath.hpp"

namespace nhpoly {

WeightVector weight_numbers(const Polytope& poly, i64 k_max,
                            const EnumeratorConfig& cfg) {
    const int n = poly.dim;
    const i64 D = denominator(poly);
    if (k_max < 0) throw OutOfRange("weight_numbers needs k_max >= 0");

    // Bounding box of (k_max/D) * poly; every point of weight <= k_max/D
    // lies inside because the polytope contains the origin.
    Rat scale(k_max, D);
    std::vector<i64> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Rat mn(0), mx(0);
        for (const auto& v : poly.vertices) {
            Rat c = scale * Rat(v[i]);
            if (c < mn) mn = c;
            if (c > mx) mx = c;
        }
        lo[i] = mn.ceil();
        hi[i] = mx.floor();
    }
    __int128 cells = 1;
    for (int i = 0; i < n; ++i) cells *= (hi[i] - lo[i] + 1);
    if (cells > cfg.cell_budget)
        throw BoxOverflow("bounding box of " + std::to_string((long long)cells) +
                          " cells exceeds budget " +
                          std::to_string(cfg.cell_budget));

    WeightVector w;
    w.D = D;
    w.counts.assign(k_max + 1, 0);
    LatticePoint u(lo);
    Rat kmax_over_d(k_max, D);
    while (true) {
        Weight wt = weight(poly, u);
        if (wt.is_finite() && wt.rat() <= kmax_over_d) {
            Rat idx = wt.rat() * Rat(D);
            if (!idx.is_integer())
                throw Error("weight " + wt.rat().str() +
                            " is not a multiple of 1/D; facet data corrupt");
            ++w.counts[idx.num()];
        }
        int axis = n - 1;
        while (axis >= 0 && u[axis] == hi[axis]) {
            u[axis] = lo[axis];
            --axis;
        }
        if (axis < 0) break;
        ++u[axis];
    }
    return w;
}

WeightVector weight_numbers(const Polytope& poly, const EnumeratorConfig& cfg) {
    const i64 D = denominator(poly);
    return weight_numbers(poly, (poly.dim + 2) * D, cfg);
}

HodgeVector hodge_numbers(const WeightVector& w, int n) {
    const i64 D = w.D;
    if (w.k_max() < n * D)
        throw InsufficientRange("weight vector covers k <= " +
                                std::to_string(w.k_max()) + ", need " +
                                std::to_string(n * D));
    HodgeVector h;
    h.D = D;
    h.n = n;
    auto hk = [&](i64 k) {
        i64 s = 0;
        for (int i = 0; i <= n; ++i) {
            i64 term = binom(n, i) * w.at(k - i * D);
            s += (i % 2 == 0) ? term : -term;
        }
        return s;
    };
    h.numbers.resize(n * D + 1);
    for (i64 k = 0; k <= n * D; ++k) {
        h.numbers[k] = hk(k);
        if (h.numbers[k] < 0)
            throw Error("negative Hodge number H(" + std::to_string(k) +
                        ") = " + std::to_string(h.numbers[k]));
    }
    // Guard band: beyond nD every Hodge number must vanish.
    for (i64 k = n * D + 1; k <= w.k_max(); ++k)
        if (hk(k) != 0)
            throw Error("nonzero Hodge number beyond nD at k=" +
                        std::to_string(k));
    return h;
}

RationalPolygon hodge_polygon(const HodgeVector& h) {
    std::vector<RationalPolygon::Segment> segs;
    for (i64 k = 0; k < static_cast<i64>(h.numbers.size()); ++k)
        if (h.numbers[k] > 0)
            segs.push_back({Rat(k, h.D), h.numbers[k]});
    return RationalPolygon::from_slopes(std::move(segs));
}

i64 diag_equilateral_W(int n, i64 m, i64 k) {
    if (n < 0 || m < 1) throw OutOfRange("diag_equilateral_W needs n >= 0, m >= 1");
    if (k < 0) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    return binom(n - 1 + k, n - 1);
}

i64 diag_equilateral_H(int n, i64 m, i64 k) {
    if (n < 1 || m < 1) throw OutOfRange("diag_equilateral_H needs n >= 1, m >= 1");
    i64 s = 0;
    for (int i = 0; i <= n; ++i) {
        i64 term = binom(n, i) * binom(n - 1 + k - i * m, n - 1);
        s += (i % 2 == 0) ? term : -term;
    }
    return s;
}

i64 popoviciu_W(i64 m1, i64 m2, i64 k) {
    if (m1 < 1 || m2 < 1 || std::gcd(m1, m2) != 1)
        throw NotCoprime("popoviciu_W needs coprime positive m1, m2");
    if (k < 0) return 0;
    auto inv_mod = [](i64 a, i64 mod) -> i64 {
        if (mod == 1) return 0;
        a %= mod;
        for (i64 x = 1; x < mod; ++x)
            if (a * x % mod == 1) return x;
        throw NotCoprime("no modular inverse");
    };
    i64 m1inv = inv_mod(m1, m2);
    i64 m2inv = inv_mod(m2, m1);
    auto frac = [](i64 num, i64 den) { // num/den - floor(num/den)
        return Rat(num - den * (num / den), den); // num, den >= 0 here
    };
    Rat w = Rat(k, m1 * m2) - frac(m2inv * k, m1) - frac(m1inv * k, m2) + Rat(1);
    if (!w.is_integer())
        throw Error("popoviciu_W produced a non-integer: " + w.str());
    return w.num();
}

namespace {

/// #{u in Z^n, u >= 0, sum u_i / m_i = w} for an arbitrary positive tuple;
/// the weight value w is scale-free so sub-tuples with different
/// denominators compose without bookkeeping.
i64 diag_count_value(const std::vector<i64>& m, const Rat& w);

i64 enumerator_diag_count(const std::vector<i64>& m, i64 k_index) {
    static std::map<std::vector<i64>, WeightVector> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end() || it->second.k_max() < k_index) {
        const int n = static_cast<int>(m.size());
        std::vector<LatticePoint> support;
        for (int i = 0; i < n; ++i) {
            LatticePoint e(n, 0);
            e[i] = m[i];
            support.push_back(std::move(e));
        }
        Polytope poly = hull_facets(support, n);
        i64 kmax = std::max<i64>(k_index, (n + 2) * denominator(poly));
        it = cache.insert_or_assign(m, weight_numbers(poly, kmax)).first;
    }
    return it->second.at(k_index);
}

i64 diag_count_value(const std::vector<i64>& m, const Rat& w) {
    const int n = static_cast<int>(m.size());
    if (w < Rat(0)) return 0;
    if (n == 0) return w.is_zero() ? 1 : 0;
    if (n == 1) {
        Rat t = w * Rat(m[0]);
        return t.is_integer() ? 1 : 0;
    }
    bool equi = std::all_of(m.begin(), m.end(), [&](i64 x) { return x == m[0]; });
    if (equi) {
        Rat t = w * Rat(m[0]);
        if (!t.is_integer()) return 0;
        return diag_equilateral_W(n, m[0], t.num());
    }
    if (n == 2 && std::gcd(m[0], m[1]) == 1) {
        Rat t = w * Rat(m[0] * m[1]);
        if (!t.is_integer()) return 0;
        return popoviciu_W(m[0], m[1], t.num());
    }
    Rat t = w * Rat(lcm_of(m));
    if (!t.is_integer()) return 0;
    return enumerator_diag_count(m, t.num());
}

i64 refl_count_value(const std::vector<i64>& m, int j, const Rat& w) {
    if (m.empty()) return w.is_zero() ? 1 : 0;
    if (j == 0) return diag_count_value(m, w);
    i64 with = 2 * refl_count_value(m, j - 1, w);
    std::vector<i64> rest = m;
    rest.erase(rest.begin() + (j - 1)); // drop the j-th variable
    return with - refl_count_value(rest, j - 1, w);
}

} // namespace

i64 reflection_W(int n, const std::vector<i64>& m, int j, i64 k) {
    if (n < 1 || static_cast<int>(m.size()) != n || j < 0 || j > n)
        throw UnsupportedParameters("reflection_W needs 0 <= j <= n = |m|");
    for (i64 mi : m)
        if (mi < 1) throw UnsupportedParameters("reflection_W needs m_i >= 1");
    if (k < 0) return 0;
    bool equi = std::all_of(m.begin(), m.end(), [&](i64 x) { return x == m[0]; });
    if (equi) {
        i64 s = 0;
        for (int i = 0; i <= j; ++i) {
            i64 term = ipow(2, j - i) * binom(j, i) *
                       diag_equilateral_W(n - i, m[0], k);
            s += (i % 2 == 0) ? term : -term;
        }
        return s;
    }
    return refl_count_value(m, j, Rat(k, lcm_of(m)));
}

i64 kloosterman_equilateral_W(int n, i64 m, int j, i64 k) {
    if (n < 1 || m < 1 || j < 1 || j > n)
        throw UnsupportedParameters("kloosterman_equilateral_W needs 1 <= j <= n");
    if (k < 0 || k > n * m)
        throw OutOfRange("kloosterman_equilateral_W valid for 0 <= k <= n*m");
    i64 s = binom(n - 1 + k, n - 1);
    for (int sgrp = 1; sgrp <= j; ++sgrp) {
        i64 beta = (j == n && sgrp == n) ? 0 : binom(j, sgrp);
        if (beta == 0) continue;
        i64 inner = 0;
        for (int l = 1; l <= n; ++l)
            inner += binom(k - (i64)l * m + n - j - 1, n - sgrp - 1);
        s += beta * inner;
    }
    if (j == n && k > 0 && k % m == 0) s += 1;
    return s;
}

i64 kloosterman_2d_correction_published(i64 m1, i64 m2, int j, i64 k) {
    const i64 D = m1 * m2;
    if (k == 2 * D) return 1 + j;
    if (k >= D && k < 2 * D && std::gcd(k, D) > 1) return 1;
    return 0;
}

i64 kloosterman_2d_W(i64 m1, i64 m2, int j, i64 k) {
    if (j != 1 && j != 2)
        throw UnsupportedParameters("kloosterman_2d_W needs j in {1,2}");
    if (!is_prime_i64(m1) || !is_prime_i64(m2) || m1 == m2)
        throw OutsideValidityDomain(
            "kloosterman_2d_W requires distinct primes m1, m2 (got " +
            std::to_string(m1) + ", " + std::to_string(m2) + ")");
    const i64 D = m1 * m2;
    if (k < 0 || k > 2 * D)
        throw OutOfRange("kloosterman_2d_W valid for 0 <= k <= 2*m1*m2");
    i64 extra = 0;
    if (k == 2 * D) {
        extra = 1 + j;
    } else if (k >= D) {
        // j=2: one boundary point per k with m1 | k or m2 | k; j=1: the
        // reflected variable only contributes multiples of m1.
        if (j == 2)
            extra = std::gcd(k, D) > 1 ? 1 : 0;
        else
            extra = k % m1 == 0 ? 1 : 0;
    }
    return popoviciu_W(m1, m2, k) + extra;
}

} // namespace nhpoly
