#include "nhpoly/gf.hpp"

#include <algorithm>
#include <numeric>

#include "nhpoly/errors.hpp"
#include "nhpoly/intmath.hpp"

namespace nhpoly {

namespace {

// Polynomial arithmetic over F_p on coefficient vectors (lowest degree
// first, no trailing zeros), used only during field construction.
using Poly = std::vector<i64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, i64 p) {
    Poly r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce by the monic modulus
    const size_t d = mod.size() - 1;
    for (size_t i = r.size(); i-- > d;) {
        i64 c = r[i] % p;
        if (c == 0) continue;
        for (size_t j = 0; j < d; ++j)
            r[i - d + j] = ((r[i - d + j] - c * mod[j]) % p + p) % p;
        r[i] = 0;
    }
    r.resize(d);
    trim(r);
    return r;
}

Poly poly_powmod(Poly base, i64 e, const Poly& mod, i64 p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        i64 lead = b.back();
        i64 inv = 1;
        for (i64 x = 1; x < p; ++x)
            if (lead * x % p == 1) { inv = x; break; }
        Poly bm = b;
        for (i64& c : bm) c = c * inv % p;
        Poly r = a;
        while (r.size() >= bm.size() && !r.empty()) {
            i64 c = r.back();
            size_t shift = r.size() - bm.size();
            for (size_t j = 0; j < bm.size(); ++j)
                r[shift + j] = ((r[shift + j] - c * bm[j]) % p + p) % p;
            trim(r);
            if (!r.empty() && r.size() >= bm.size() && r.back() == 0) trim(r);
        }
        a = b;
        b = r;
    }
    return a;
}

/// Rabin irreducibility test for a monic candidate (coefficients low-first
/// including the leading 1).
bool is_irreducible(const Poly& f, i64 p) {
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 1) return false;
    if (d == 1) return true;
    // frob[i] = x^{p^i} mod f, built by repeated p-th powers
    Poly x = {0, 1};
    Poly frob = poly_powmod(x, p, f, p);
    std::vector<Poly> frobs = {frob}; // index 0 holds x^{p^1}
    for (int i = 1; i < d; ++i) frobs.push_back(poly_powmod(frobs.back(), p, f, p));
    // x^{p^d} must equal x
    Poly xd = frobs[d - 1];
    if (xd != x) return false;
    // for each prime r | d, gcd(x^{p^{d/r}} - x, f) must be 1
    int dd = d;
    std::vector<int> rs;
    for (int r = 2; r * r <= dd; ++r)
        while (dd % r == 0) { rs.push_back(r); dd /= r; }
    if (dd > 1) rs.push_back(dd);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    for (int r : rs) {
        Poly diff = frobs[d / r - 1];
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        trim(diff);
        Poly g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> fs;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace

felt FieldCtx::add(felt a, felt b) const {
    felt r = 0, mult = 1;
    for (int i = 0; i < d; ++i) {
        i64 da = (a / mult) % p + (b / mult) % p;
        if (da >= p) da -= p;
        r += felt(da) * mult;
        mult *= p;
    }
    return r;
}

felt FieldCtx::neg(felt a) const {
    felt r = 0, mult = 1;
    for (int i = 0; i < d; ++i) {
        i64 da = (a / mult) % p;
        if (da) da = p - da;
        r += felt(da) * mult;
        mult *= p;
    }
    return r;
}

felt FieldCtx::sub(felt a, felt b) const { return add(a, neg(b)); }

void FieldCtx::mul_digits(const int* a, const int* b, int* out) const {
    // schoolbook convolution with delayed reduction; products stay far
    // below 2^63 for the digit sizes we allow
    i64 acc[64] = {0};
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) acc[i + j] += i64(a[i]) * b[j];
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        i64 c = acc[k] % p;
        if (c == 0) continue;
        const std::vector<int>& row = red_rows_[k - d];
        for (int i = 0; i < d; ++i) acc[i] += c * row[i];
    }
    for (int i = 0; i < d; ++i) out[i] = int(acc[i] % p);
}

felt FieldCtx::mul(felt a, felt b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
        i64 s = log_tbl_[a] + log_tbl_[b];
        if (s >= q - 1) s -= q - 1;
        return exp_tbl_[s];
    }
    std::vector<int> da = to_digits(a), db = to_digits(b), out(d);
    mul_digits(da.data(), db.data(), out.data());
    return from_digits(out);
}

felt FieldCtx::pow(felt a, i64 e) const {
    if (a == 0) {
        if (e < 0) throw ZeroCoordinate("inverse of zero");
        return e == 0 ? 1 : 0;
    }
    i64 m = q - 1;
    if (m == 0) return 1; // F_2 torus is trivial
    e %= m;
    if (e < 0) e += m;
    if (has_tables()) {
        i64 s = (__int128)log_tbl_[a] * e % m;
        return exp_tbl_[s];
    }
    felt r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

felt FieldCtx::inv(felt a) const {
    if (a == 0) throw ZeroCoordinate("inverse of zero");
    return pow(a, -1);
}

felt FieldCtx::from_int(i64 c) const {
    c %= p;
    if (c < 0) c += p;
    return felt(c);
}

int FieldCtx::trace_digits(const int* digits) const {
    i64 t = 0;
    for (int i = 0; i < d; ++i) t += i64(digits[i]) * tr_basis_[i];
    return int(t % p);
}

int FieldCtx::trace(felt a) const {
    i64 t = 0;
    felt rest = a;
    for (int i = 0; i < d; ++i) {
        t += i64(rest % p) * tr_basis_[i];
        rest /= p;
    }
    return int(t % p);
}

std::vector<int> FieldCtx::to_digits(felt a) const {
    std::vector<int> out(d);
    for (int i = 0; i < d; ++i) {
        out[i] = int(a % p);
        a /= p;
    }
    return out;
}

felt FieldCtx::from_digits(std::span<const int> digits) const {
    felt r = 0;
    for (int i = d - 1; i >= 0; --i) r = r * p + felt(digits[i]);
    return r;
}

i64 FieldCtx::log_of(felt a) const {
    if (a == 0) throw ZeroCoordinate("log of zero");
    if (has_tables()) return log_tbl_[a];
    // rare path: linear walk
    felt z = 1;
    for (i64 s = 0; s < q - 1; ++s) {
        if (z == a) return s;
        z = mul(z, generator);
    }
    throw Error("discrete log walk failed; field tables corrupt");
}

FieldCtx field_create(i64 p, int d, const FieldConfig& cfg) {
    if (!is_prime_i64(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (d < 1 || d > 48) throw BudgetExceeded("extension degree out of range");
    __int128 q128 = 1;
    for (int i = 0; i < d; ++i) {
        q128 *= p;
        if (q128 > cfg.field_budget)
            throw BudgetExceeded("field of size p^d exceeds budget " +
                                 std::to_string(cfg.field_budget));
    }
    FieldCtx ctx;
    ctx.p = p;
    ctx.d = d;
    ctx.q = (i64)q128;

    // modulus_index-th monic irreducible in dense order
    int found = -1;
    i64 limit = 1;
    for (int i = 0; i < d; ++i) limit *= p;
    Poly f;
    for (i64 c = 0; c < limit; ++c) {
        f.assign(d + 1, 0);
        i64 rest = c;
        for (int i = 0; i < d; ++i) {
            f[i] = rest % p;
            rest /= p;
        }
        f[d] = 1;
        if (is_irreducible(f, p)) {
            if (++found == cfg.modulus_index) break;
        }
    }
    if (found != cfg.modulus_index)
        throw Error("no irreducible modulus found; unreachable");
    ctx.modulus.assign(d, 0);
    for (int i = 0; i < d; ++i) ctx.modulus[i] = int(f[i]);

    // reduction rows: x^{d+j} mod f for j = 0..d-2
    {
        std::vector<std::vector<int>> rows;
        std::vector<i64> cur(f.begin(), f.end() - 1); // x^d = -sum f_i x^i
        for (i64& c : cur) c = (p - c) % p;
        for (int j = 0; j <= d - 2; ++j) {
            std::vector<int> row(d);
            for (int i = 0; i < d; ++i) row[i] = int(cur[i]);
            rows.push_back(row);
            // multiply cur by x mod f
            std::vector<i64> nxt(d, 0);
            for (int i = 0; i < d - 1; ++i) nxt[i + 1] = cur[i];
            i64 top = cur[d - 1];
            if (top) {
                for (int i = 0; i < d; ++i)
                    nxt[i] = (nxt[i] + top * ((p - ctx.modulus[i]) % p)) % p;
            }
            cur = nxt;
        }
        ctx.red_rows_ = std::move(rows);
    }

    // trace linear form Tr(xbar^j)
    {
        Poly x = {0, 1};
        std::vector<Poly> frobs; // x^{p^i} mod f, i = 0..d-1
        frobs.push_back(x);
        for (int i = 1; i < d; ++i)
            frobs.push_back(poly_powmod(frobs.back(), p, f, p));
        ctx.tr_basis_.assign(d, 0);
        for (int j = 0; j < d; ++j) {
            Poly sum;
            for (int i = 0; i < d; ++i) {
                Poly t = poly_powmod(frobs[i], j, f, p);
                if (t.size() > sum.size()) sum.resize(t.size(), 0);
                for (size_t k = 0; k < t.size(); ++k)
                    sum[k] = (sum[k] + t[k]) % p;
            }
            trim(sum);
            if (sum.size() > 1)
                throw Error("trace of basis element not in the prime field");
            ctx.tr_basis_[j] = sum.empty() ? 0 : int(sum[0]);
        }
    }

    // generator of the unit group: smallest dense index whose order is q-1
    if (ctx.q == 2) {
        ctx.generator = 1;
    } else {
        auto factors = prime_factors(ctx.q - 1);
        for (felt c = 2; c < (felt)ctx.q; ++c) {
            bool ok = true;
            for (i64 r : factors) {
                if (ctx.pow(c, (ctx.q - 1) / r) == 1) { ok = false; break; }
            }
            if (ok) { ctx.generator = c; break; }
        }
        if (ctx.generator == 0) throw Error("no generator found; unreachable");
    }

    if (ctx.q <= cfg.table_budget) {
        ctx.exp_tbl_.resize(ctx.q - 1);
        ctx.log_tbl_.assign(ctx.q, 0);
        std::vector<int> z = ctx.to_digits(1), g = ctx.to_digits(ctx.generator);
        std::vector<int> tmp(d);
        for (i64 s = 0; s < ctx.q - 1; ++s) {
            felt dense = ctx.from_digits(z);
            ctx.exp_tbl_[s] = uint32_t(dense);
            ctx.log_tbl_[dense] = uint32_t(s);
            ctx.mul_digits(z.data(), g.data(), tmp.data());
            std::swap(z, tmp);
        }
    }
    return ctx;
}

int trace(const FieldCtx& ctx, const FieldElement& x) {
    return ctx.trace(ctx.from_element(x));
}

felt evaluate(const FieldCtx& ctx, const std::vector<EvalTerm>& terms,
              const std::vector<felt>& point) {
    for (felt x : point)
        if (x == 0) throw ZeroCoordinate("evaluation point off the torus");
    felt acc = 0;
    for (const EvalTerm& t : terms) {
        felt v = t.coef;
        for (size_t i = 0; i < point.size(); ++i)
            v = ctx.mul(v, ctx.pow(point[i], t.exp[i]));
        acc = ctx.add(acc, v);
    }
    return acc;
}

felt embed_subfield_root(const FieldCtx& ctx, int a) {
    if (a < 1 || ctx.d % a != 0)
        throw InvalidSpec("subfield degree must divide the extension degree");
    if (a == 1) return 1;
    // canonical modulus of F_{p^a}
    FieldConfig sub_cfg;
    sub_cfg.field_budget = ctx.q;
    FieldCtx sub = field_create(ctx.p, a, sub_cfg);
    // the subfield of order p^a is cyclic of order p^a - 1 inside ctx
    i64 sub_order = sub.q - 1;
    felt z = ctx.pow(ctx.generator, (ctx.q - 1) / sub_order);
    // evaluate the subfield modulus at each subfield element, smallest root wins
    felt best = 0;
    bool have = false;
    felt cur = 1;
    for (i64 i = 0; i < sub_order; ++i) {
        felt v = 0;
        felt xp = 1;
        for (int j = 0; j < a; ++j) {
            v = ctx.add(v, ctx.mul(ctx.from_int(sub.modulus[j]), xp));
            xp = ctx.mul(xp, cur);
        }
        v = ctx.add(v, xp); // leading monic term x^a
        if (v == 0 && (!have || cur < best)) {
            best = cur;
            have = true;
        }
        cur = ctx.mul(cur, z);
    }
    if (!have) throw Error("subfield modulus has no root; unreachable");
    return best;
}

} // namespace nhpoly
