#include "nhpoly/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <thread>

#include "nhpoly/errors.hpp"
#include "nhpoly/intmath.hpp"

namespace nhpoly {

// ---------------------------------------------------------------- LaurentPoly

std::vector<LatticePoint> LaurentPoly::support() const {
    std::vector<LatticePoint> s;
    for (const auto& t : terms) s.push_back(t.exp);
    return s;
}

bool LaurentPoly::is_diagonal() const {
    if (static_cast<int>(terms.size()) != n) return false;
    std::vector<bool> used(n, false);
    for (const auto& t : terms) {
        int var = -1;
        for (int i = 0; i < n; ++i) {
            if (t.exp[i] != 0) {
                if (var >= 0) return false;
                var = i;
            }
        }
        if (var < 0 || used[var]) return false;
        used[var] = true;
    }
    return true;
}

// -------------------------------------------------------------- CyclotomicInt

bool CyclotomicInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
    CyclotomicInt r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
    CyclotomicInt r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
    const size_t len = c_.size(); // p - 1
    std::vector<mpz_class> conv(2 * len - 1, mpz_class(0));
    for (size_t i = 0; i < len; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < len; ++j) {
            if (o.c_[j] == 0) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    CyclotomicInt r(p_);
    for (size_t e = 0; e < conv.size(); ++e) {
        if (conv[e] == 0) continue;
        size_t em = e % p_; // zeta^p = 1
        if (em == static_cast<size_t>(p_ - 1)) {
            for (size_t i = 0; i + 1 < static_cast<size_t>(p_); ++i)
                r.c_[i] -= conv[e];
        } else {
            r.c_[em] += conv[e];
        }
    }
    return r;
}

CyclotomicInt CyclotomicInt::conjugate(i64 t) const {
    CyclotomicInt r(p_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        i64 em = (i64)i * t % p_;
        if (em == p_ - 1) {
            for (size_t j = 0; j + 1 < static_cast<size_t>(p_); ++j)
                r.c_[j] -= c_[i];
        } else {
            r.c_[em] += c_[i];
        }
    }
    return r;
}

mpz_class CyclotomicInt::norm() const {
    CyclotomicInt acc = *this;
    for (i64 t = 2; t < p_; ++t) acc = acc * conjugate(t);
    for (size_t i = 1; i < acc.c_.size(); ++i)
        if (acc.c_[i] != 0)
            throw Error("cyclotomic norm is not a rational integer");
    return acc.c_[0];
}

bool CyclotomicInt::divexact(i64 k) {
    for (const auto& x : c_)
        if (!mpz_divisible_ui_p(x.get_mpz_t(), (unsigned long)k)) return false;
    for (auto& x : c_)
        mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), (unsigned long)k);
    return true;
}

// -------------------------------------------------------------------- helpers

namespace {

felt embed_coefficient(const FieldCtx& ctx, const std::vector<i64>& digits,
                       int a, felt subfield_root) {
    felt v = 0, xp = 1;
    if (static_cast<int>(digits.size()) > a)
        throw InvalidSpec("coefficient has more than a digits");
    for (i64 dgt : digits) {
        felt c = ctx.from_int(dgt);
        v = ctx.add(v, ctx.mul(c, xp));
        xp = ctx.mul(xp, subfield_root);
    }
    return v;
}

FieldConfig field_cfg_of(const ZetaConfig& cfg) {
    FieldConfig fc;
    fc.field_budget = cfg.field_budget;
    fc.table_budget = cfg.table_budget;
    fc.modulus_index = cfg.modulus_index;
    return fc;
}

/// #{x in F*_q : Tr(c x^e) = t} for every t, by walking the image subgroup.
std::vector<std::uint64_t> single_variable_profile(const FieldCtx& ctx, felt c,
                                                   i64 e, int threads) {
    const i64 L = ctx.q - 1;
    i64 em = e % L;
    if (em < 0) em += L;
    const i64 mult = std::gcd(em, L) == 0 ? L : std::gcd(em, L);
    const i64 ord = L / mult; // size of the image subgroup
    const felt h = ctx.pow(ctx.generator, em);

    int nthreads = std::max(1, std::min<i64>(threads, ord));
    std::vector<std::vector<std::uint64_t>> parts(
        nthreads, std::vector<std::uint64_t>(ctx.p, 0));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        const i64 lo = ord * t / nthreads;
        const i64 hi = ord * (t + 1) / nthreads;
        pool.emplace_back([&, t, lo, hi]() {
            felt start = ctx.mul(c, ctx.pow(h, lo));
            auto& prof = parts[t];
            walk_multiplicative(ctx, start, h, hi - lo,
                                [&](std::uint64_t, const int* digits) {
                                    ++prof[ctx.trace_digits(digits)];
                                });
        });
    }
    for (auto& th : pool) th.join();
    std::vector<std::uint64_t> profile(ctx.p, 0);
    for (const auto& part : parts)
        for (i64 t = 0; t < ctx.p; ++t) profile[t] += part[t];
    for (auto& x : profile) x *= (std::uint64_t)mult;
    return profile;
}

constexpr int kMaxTerms = 16;
constexpr int kMaxVars = 6;

struct TorusEnum {
    const std::uint8_t* tr = nullptr;
    std::uint64_t L = 0;
    int n = 0, nterms = 0;
    std::uint32_t stride[kMaxTerms][kMaxVars] = {};
    std::uint32_t coef_log[kMaxTerms] = {};
    std::uint8_t modp[kMaxTerms * 16] = {};
    i64 p = 0;

    void run_inner(std::array<std::uint32_t, kMaxTerms> l,
                   std::uint64_t steps, std::uint64_t* counts) const {
        const int J = nterms;
        const int axis = n - 1;
        for (std::uint64_t s = 0; s < steps; ++s) {
            unsigned acc = 0;
            for (int j = 0; j < J; ++j) acc += tr[l[j]];
            ++counts[modp[acc]];
            for (int j = 0; j < J; ++j) {
                l[j] += stride[j][axis];
                if (l[j] >= L) l[j] -= L;
            }
        }
    }

    void run_axis(int axis, std::array<std::uint32_t, kMaxTerms> l,
                  std::uint64_t* counts) const {
        if (axis == n - 1) {
            run_inner(l, L, counts);
            return;
        }
        for (std::uint64_t s = 0; s < L; ++s) {
            run_axis(axis + 1, l, counts);
            for (int j = 0; j < nterms; ++j) {
                l[j] += stride[j][axis];
                if (l[j] >= L) l[j] -= L;
            }
        }
    }
};

} // namespace

TraceProfile trace_counts(const LaurentPoly& f, i64 p, int a, int k,
                          const ZetaConfig& cfg) {
    if (f.n < 1 || f.n > kMaxVars) throw InvalidSpec("1 <= n <= 6 variables");
    if (f.terms.empty() || static_cast<int>(f.terms.size()) > kMaxTerms)
        throw InvalidSpec("term count out of range");
    FieldCtx ctx = field_create(p, a * k, field_cfg_of(cfg));
    const i64 L = ctx.q - 1;

    felt rho = embed_subfield_root(ctx, a);
    std::vector<felt> coefs;
    for (const auto& t : f.terms) {
        felt c = embed_coefficient(ctx, t.coef_digits, a, rho);
        if (c == 0) throw InvalidSpec("zero coefficient in Laurent polynomial");
        coefs.push_back(c);
    }

    TraceProfile out;
    out.p = p;
    out.counts.assign(p, mpz_class(0));

    const bool diagonal = f.is_diagonal() && !cfg.force_full_enumeration;
    if (diagonal) {
        if (double(L) * f.n > cfg.eval_budget)
            throw BudgetExceeded("diagonal profile needs " +
                                 std::to_string(double(L) * f.n) +
                                 " evaluations, budget " +
                                 std::to_string(cfg.eval_budget));
        std::vector<mpz_class> acc = {mpz_class(1)};
        acc.resize(p, mpz_class(0)); // delta at t = 0
        for (size_t ti = 0; ti < f.terms.size(); ++ti) {
            int var = 0;
            for (int i = 0; i < f.n; ++i)
                if (f.terms[ti].exp[i] != 0) var = i;
            auto prof = single_variable_profile(ctx, coefs[ti],
                                                f.terms[ti].exp[var],
                                                cfg.threads);
            std::vector<mpz_class> next(p, mpz_class(0));
            for (i64 u = 0; u < p; ++u) {
                if (acc[u] == 0) continue;
                for (i64 v = 0; v < p; ++v) {
                    if (prof[v] == 0) continue;
                    next[(u + v) % p] += acc[u] * (unsigned long)prof[v];
                }
            }
            acc = std::move(next);
        }
        out.counts = std::move(acc);
    } else {
        double work = std::pow(double(L), f.n);
        if (work > cfg.eval_budget)
            throw BudgetExceeded("torus of " + std::to_string(work) +
                                 " points exceeds budget " +
                                 std::to_string(cfg.eval_budget) +
                                 "; raise it or use a diagonal polynomial");

        // trace-of-log table plus discrete logs of the coefficients, from
        // one generator walk
        std::vector<std::uint8_t> tr(std::max<i64>(L, 1));
        std::vector<i64> coef_logs(coefs.size(), -1);
        walk_multiplicative(ctx, 1, ctx.generator, L,
                            [&](std::uint64_t s, const int* digits) {
                                tr[s] = (std::uint8_t)ctx.trace_digits(digits);
                                felt dense = ctx.from_digits(
                                    std::span<const int>(digits, ctx.d));
                                for (size_t j = 0; j < coefs.size(); ++j)
                                    if (coefs[j] == dense) coef_logs[j] = (i64)s;
                            });
        for (i64 lg : coef_logs)
            if (lg < 0) throw Error("coefficient log not found; walk corrupt");

        TorusEnum e;
        e.tr = tr.data();
        e.L = (std::uint64_t)L;
        e.n = f.n;
        e.nterms = (int)f.terms.size();
        e.p = p;
        for (int j = 0; j < e.nterms; ++j) {
            e.coef_log[j] = (std::uint32_t)coef_logs[j];
            for (int i = 0; i < f.n; ++i) {
                i64 st = f.terms[j].exp[i] % L;
                if (st < 0) st += L;
                e.stride[j][i] = (std::uint32_t)st;
            }
        }
        for (int v = 0; v < kMaxTerms * 16; ++v) e.modp[v] = (std::uint8_t)(v % p);

        const int nthreads = std::max(1, std::min<i64>(cfg.threads, L));
        std::vector<std::vector<std::uint64_t>> parts(
            nthreads, std::vector<std::uint64_t>(p, 0));
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            const i64 lo = L * t / nthreads;
            const i64 hi = L * (t + 1) / nthreads;
            pool.emplace_back([&, t, lo, hi]() {
                std::array<std::uint32_t, kMaxTerms> l = {};
                for (int j = 0; j < e.nterms; ++j)
                    l[j] = (std::uint32_t)((e.coef_log[j] +
                                            (std::uint64_t)e.stride[j][0] * lo) %
                                           e.L);
                if (e.n == 1) {
                    e.run_inner(l, hi - lo, parts[t].data());
                } else {
                    for (i64 s = lo; s < hi; ++s) {
                        e.run_axis(1, l, parts[t].data());
                        for (int j = 0; j < e.nterms; ++j) {
                            l[j] += e.stride[j][0];
                            if (l[j] >= e.L) l[j] -= e.L;
                        }
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : parts)
            for (i64 t = 0; t < p; ++t)
                out.counts[t] += (unsigned long)part[t];
    }

    mpz_class total = 0, expect;
    for (const auto& c : out.counts) total += c;
    mpz_ui_pow_ui(expect.get_mpz_t(), (unsigned long)L, (unsigned long)f.n);
    if (total != expect)
        throw Error("trace profile does not cover the torus exactly");
    return out;
}

CyclotomicInt exp_sum(const TraceProfile& profile) {
    const i64 p = profile.p;
    CyclotomicInt s(p);
    for (i64 t = 0; t < p; ++t) {
        if (t == p - 1) {
            for (i64 i = 0; i + 1 < p; ++i) s[i] -= profile.counts[t];
        } else {
            s[t] += profile.counts[t];
        }
    }
    return s;
}

std::vector<CyclotomicInt> l_poly_coeffs(const std::vector<CyclotomicInt>& s,
                                         int n) {
    if (s.empty()) throw EmptyInput("no exponential sums given");
    const i64 p = s[0].p();
    const int M = (int)s.size();
    const bool negate = (n - 1) % 2 != 0; // eps = (-1)^(n-1)
    std::vector<CyclotomicInt> c;
    c.push_back(CyclotomicInt::from_int(p, 1));
    for (int i = 1; i <= M; ++i) {
        CyclotomicInt sum(p);
        for (int j = 1; j <= i; ++j) sum = sum + s[j - 1] * c[i - j];
        if (negate) sum = -sum;
        if (!sum.divexact(i))
            throw InexactDivision("coefficient recurrence not divisible by " +
                                  std::to_string(i) +
                                  "; an exponential sum is wrong");
        c.push_back(std::move(sum));
    }
    return c;
}

std::optional<i64> pi_valuation(const CyclotomicInt& c) {
    if (c.is_zero()) return std::nullopt;
    mpz_class nrm = c.norm();
    if (nrm == 0) throw Error("nonzero cyclotomic integer with zero norm");
    mpz_class reduced;
    mp_bitcnt_t v = mpz_remove(reduced.get_mpz_t(), nrm.get_mpz_t(),
                               mpz_class(c.p()).get_mpz_t());
    return (i64)v;
}

namespace {

/// Exponential sums S_1..S_M of a one-term, one-variable polynomial,
/// brute-forced inside the polynomiality window and extended by the Newton
/// recurrence beyond it.
std::vector<CyclotomicInt> monomial_sums(const LaurentTerm& term, int var,
                                         i64 p, int a, int M,
                                         const ZetaConfig& cfg) {
    LaurentPoly one;
    one.n = 1;
    one.terms.push_back(LaurentTerm{{term.exp[var]}, term.coef_digits});
    const i64 deg = term.exp[var] > 0 ? term.exp[var] : -term.exp[var];
    const int window = (int)std::min<i64>(deg + 2, M);
    std::vector<CyclotomicInt> s;
    for (int k = 1; k <= window; ++k)
        s.push_back(exp_sum(trace_counts(one, p, a, k, cfg)));
    if (window == M) return s;

    // certify the one-variable L-function is a polynomial of degree <= deg
    auto c = l_poly_coeffs(s, 1);
    for (i64 i = deg + 1; i <= window; ++i)
        if (!c[i].is_zero())
            throw PolynomialityViolation(
                "one-variable factor has a nonzero coefficient beyond its "
                "degree");
    for (int k = window + 1; k <= M; ++k) {
        CyclotomicInt next(p);
        for (i64 j = 1; j <= deg; ++j) next = next - c[j] * s[k - 1 - j];
        s.push_back(std::move(next));
    }
    return s;
}

} // namespace

NewtonPolygonResult newton_polygon(const LaurentPoly& f, i64 p, int a,
                                   const ZetaConfig& cfg) {
    Polytope poly = hull_facets(f.support(), f.n);
    const i64 N = normalized_volume(poly);
    const int M = (int)N + 2;

    std::vector<CyclotomicInt> s;
    if (f.is_diagonal() && !cfg.force_full_enumeration) {
        std::vector<std::vector<CyclotomicInt>> factors;
        for (size_t ti = 0; ti < f.terms.size(); ++ti) {
            int var = 0;
            for (int i = 0; i < f.n; ++i)
                if (f.terms[ti].exp[i] != 0) var = i;
            factors.push_back(monomial_sums(f.terms[ti], var, p, a, M, cfg));
        }
        for (int k = 1; k <= M; ++k) {
            CyclotomicInt prod = factors[0][k - 1];
            for (size_t i = 1; i < factors.size(); ++i)
                prod = prod * factors[i][k - 1];
            s.push_back(std::move(prod));
        }
    } else {
        for (int k = 1; k <= M; ++k)
            s.push_back(exp_sum(trace_counts(f, p, a, k, cfg)));
    }

    auto c = l_poly_coeffs(s, f.n);
    for (i64 i = N + 1; i <= M; ++i)
        if (!c[i].is_zero())
            throw PolynomialityViolation("L-polynomial coefficient C_" +
                                         std::to_string(i) +
                                         " is nonzero beyond degree " +
                                         std::to_string(N));

    NewtonPolygonResult out;
    out.degree = N;
    const i64 denom = (p - 1) * a;
    std::vector<std::pair<i64, std::optional<Rat>>> pts;
    for (i64 i = 0; i <= N; ++i) {
        auto v = pi_valuation(c[i]);
        std::optional<Rat> ord;
        if (v) ord = Rat(*v, denom);
        out.valuations.emplace_back(i, ord);
        pts.emplace_back(i, ord);
    }
    out.polygon = lower_hull(pts);
    return out;
}

} // namespace nhpoly
