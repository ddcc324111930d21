#include "nhpoly/diagonal.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nhpoly/errors.hpp"

namespace nhpoly {

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat to_z(const IntMatrix& m) {
    ZMat z(m.size(), std::vector<mpz_class>(m.size()));
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) throw InvalidSpec("matrix is not square");
        for (size_t j = 0; j < m.size(); ++j) z[i][j] = m[i][j];
    }
    return z;
}

ZMat identity(size_t n) {
    ZMat e(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) e[i][i] = 1;
    return e;
}

i64 to_i64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw ArithmeticOverflow("matrix entry too large");
    return z.get_si();
}

} // namespace

SmithResult smith_normal_form(const IntMatrix& m_in) {
    const size_t n = m_in.size();
    if (n == 0) throw InvalidSpec("empty matrix");
    ZMat a = to_z(m_in), u = identity(n), v = identity(n);

    auto row_swap = [&](size_t i, size_t j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t r = 0; r < n; ++r) {
            std::swap(a[r][i], a[r][j]);
            std::swap(v[r][i], v[r][j]);
        }
    };
    auto row_addmul = [&](size_t dst, size_t src, const mpz_class& f) {
        for (size_t c = 0; c < n; ++c) a[dst][c] += f * a[src][c];
        for (size_t c = 0; c < n; ++c) u[dst][c] += f * u[src][c];
    };
    auto col_addmul = [&](size_t dst, size_t src, const mpz_class& f) {
        for (size_t r = 0; r < n; ++r) a[r][dst] += f * a[r][src];
        for (size_t r = 0; r < n; ++r) v[r][dst] += f * v[r][src];
    };
    auto row_negate = [&](size_t i) {
        for (size_t c = 0; c < n; ++c) a[i][c] = -a[i][c];
        for (size_t c = 0; c < n; ++c) u[i][c] = -u[i][c];
    };

    for (size_t t = 0; t < n; ++t) {
        // find the smallest nonzero entry in the trailing block
        while (true) {
            size_t bi = n, bj = n;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 &&
                        (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) throw SingularMatrix("matrix has rank below n");
            if (bi != t) row_swap(t, bi);
            if (bj != t) col_swap(t, bj);
            if (a[t][t] < 0) row_negate(t);

            bool clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q = a[i][t] / a[t][t];
                // round toward making the remainder small
                row_addmul(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q = a[t][j] / a[t][t];
                col_addmul(j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (clean) {
                // pivot must divide the whole trailing block
                bool divides = true;
                for (size_t i = t + 1; i < n && divides; ++i)
                    for (size_t j = t + 1; j < n && divides; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            // fold that row in and restart the pivot hunt
                            row_addmul(t, i, 1);
                            divides = false;
                        }
                if (divides) break;
            }
        }
    }

    SmithResult out;
    out.u.assign(n, std::vector<i64>(n));
    out.v.assign(n, std::vector<i64>(n));
    out.s.assign(n, std::vector<i64>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        out.invariant_factors.push_back(to_i64(a[i][i]));
        out.s[i][i] = out.invariant_factors.back();
        for (size_t j = 0; j < n; ++j) {
            out.u[i][j] = to_i64(u[i][j]);
            out.v[i][j] = to_i64(v[i][j]);
        }
    }
    return out;
}

i64 largest_invariant_factor(const IntMatrix& m) {
    return smith_normal_form(m).invariant_factors.back();
}

std::vector<SDeltaElement> sdelta_group(const IntMatrix& m,
                                        const SDeltaConfig& cfg) {
    const size_t n = m.size();
    SmithResult snf = smith_normal_form(m);
    i64 det = 1;
    for (i64 s : snf.invariant_factors) {
        if (__int128(det) * s > cfg.enumeration_budget)
            throw BudgetExceeded("group order exceeds enumeration budget");
        det *= s;
    }
    // solutions are r = V (t_1/s_1, ..., t_n/s_n)^T mod 1
    std::vector<SDeltaElement> out;
    std::vector<i64> t(n, 0);
    const auto& s = snf.invariant_factors;
    while (true) {
        SDeltaElement e;
        e.den = det;
        e.num.assign(n, 0);
        for (size_t r = 0; r < n; ++r) {
            __int128 acc = 0;
            for (size_t c = 0; c < n; ++c)
                acc += __int128(snf.v[r][c]) * t[c] * (det / s[c]);
            i64 red = i64(acc % det);
            if (red < 0) red += det;
            e.num[r] = red;
        }
        out.push_back(std::move(e));
        size_t axis = n;
        while (axis > 0 && t[axis - 1] == s[axis - 1] - 1) {
            t[axis - 1] = 0;
            --axis;
        }
        if (axis == 0) break;
        ++t[axis - 1];
    }
    std::sort(out.begin(), out.end(),
              [](const SDeltaElement& a, const SDeltaElement& b) {
                  return a.num < b.num;
              });
    return out;
}

std::vector<std::pair<Rat, i64>> orbit_slopes(const IntMatrix& m, i64 p,
                                              const SDeltaConfig& cfg) {
    SmithResult snf = smith_normal_form(m);
    i64 det = 1;
    for (i64 s : snf.invariant_factors) det *= s;
    if (det < 0) det = -det;
    if (std::gcd(p, det) != 1)
        throw DegeneratePrime("p divides det(M); multiplication by p is not "
                              "an automorphism");
    auto group = sdelta_group(m, cfg);
    const size_t n = m.size();

    // index elements by numerator vector for orbit chasing
    std::map<std::vector<i64>, size_t> index;
    for (size_t i = 0; i < group.size(); ++i) index[group[i].num] = i;

    auto norm_num = [&](const SDeltaElement& e) {
        i64 s = 0;
        for (i64 x : e.num) s += x; // each coordinate already in [0, den)
        return s;
    };

    std::vector<bool> visited(group.size(), false);
    std::map<Rat, i64> multiset;
    for (size_t i = 0; i < group.size(); ++i) {
        if (visited[i]) continue;
        // walk the orbit of element i under r -> {p r}
        std::vector<size_t> orbit;
        size_t cur = i;
        while (!visited[cur]) {
            visited[cur] = true;
            orbit.push_back(cur);
            std::vector<i64> next(n);
            for (size_t c = 0; c < n; ++c)
                next[c] = i64((__int128(group[cur].num[c]) * p) % group[cur].den);
            auto it = index.find(next);
            if (it == index.end())
                throw Error("orbit left the group; S(Delta) enumeration bug");
            cur = it->second;
        }
        i64 total = 0;
        for (size_t e : orbit) total += norm_num(group[e]);
        Rat avg(total, i64(orbit.size()) * group[i].den);
        multiset[avg] += i64(orbit.size());
    }
    return {multiset.begin(), multiset.end()};
}

RationalPolygon polygon_from_slopes(
    const std::vector<std::pair<Rat, i64>>& slopes) {
    std::vector<RationalPolygon::Segment> segs;
    for (const auto& [slope, len] : slopes) segs.push_back({slope, len});
    return RationalPolygon::from_slopes(std::move(segs));
}

} // namespace nhpoly
