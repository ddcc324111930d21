#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "nhpoly/gf.hpp"
#include "nhpoly/lattice.hpp"
#include "nhpoly/polygon.hpp"

namespace nhpoly {

/// One term coef * x^exp of a Laurent polynomial over F_{p^a}; the
/// coefficient is stored as base-p digits so the polynomial itself stays
/// independent of any particular field construction.
struct LaurentTerm {
    std::vector<i64> exp;
    std::vector<i64> coef_digits = {1};
};

struct LaurentPoly {
    int n = 0;
    std::vector<LaurentTerm> terms;

    std::vector<LatticePoint> support() const;
    /// n single-variable terms on n distinct variables.
    bool is_diagonal() const;
};

/// counts[t] = #{x in (F*_{q^k})^n : Tr_k f(x) = t}.
struct TraceProfile {
    i64 p = 0;
    std::vector<mpz_class> counts;
};

/// Element of Z[zeta_p] on the power basis 1, zeta, ..., zeta^{p-2} with
/// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
class CyclotomicInt {
public:
    CyclotomicInt() = default;
    explicit CyclotomicInt(i64 p) : p_(p), c_(p - 1, mpz_class(0)) {}
    static CyclotomicInt from_int(i64 p, mpz_class v) {
        CyclotomicInt r(p);
        r.c_[0] = std::move(v);
        return r;
    }

    i64 p() const { return p_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class& operator[](size_t i) { return c_[i]; }
    const mpz_class& operator[](size_t i) const { return c_[i]; }

    bool is_zero() const;

    CyclotomicInt operator+(const CyclotomicInt& o) const;
    CyclotomicInt operator-(const CyclotomicInt& o) const;
    CyclotomicInt operator-() const;
    CyclotomicInt operator*(const CyclotomicInt& o) const;

    /// Galois conjugate zeta -> zeta^t, gcd(t, p) = 1.
    CyclotomicInt conjugate(i64 t) const;

    /// Field norm down to Z (product of all conjugates).
    mpz_class norm() const;

    /// Divide every coefficient by k; false when not exactly divisible.
    bool divexact(i64 k);

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

private:
    i64 p_ = 0;
    std::vector<mpz_class> c_;
};

struct ZetaConfig {
    double eval_budget = 2e9;        // torus points per exponential sum
    i64 field_budget = i64(1) << 26; // largest p^(a k) we will construct
    i64 table_budget = i64(1) << 22;
    int threads = 1;
    int modulus_index = 0;           // deterministic alternative moduli
    bool force_full_enumeration = false; // testing hook: bypass factorization
};

/// Exact trace profile over F_{q^k}, q = p^a, by exhaustive torus
/// enumeration; diagonal polynomials factor through per-variable profiles
/// convolved over F_p.
TraceProfile trace_counts(const LaurentPoly& f, i64 p, int a, int k,
                          const ZetaConfig& cfg = {});

/// S = sum counts[t] zeta^t reduced to the power basis.
CyclotomicInt exp_sum(const TraceProfile& profile);

/// Coefficients C_0..C_M of exp(eps * sum S_k T^k / k), eps = (-1)^(n-1),
/// via i*C_i = eps * sum_{j<=i} S_j C_{i-j}; every division must be exact.
/// s[j] holds S_{j+1}.
std::vector<CyclotomicInt> l_poly_coeffs(const std::vector<CyclotomicInt>& s,
                                         int n);

/// v_pi for pi = 1 - zeta_p, computed as v_p(norm); nullopt when c = 0.
std::optional<i64> pi_valuation(const CyclotomicInt& c);

struct NewtonPolygonResult {
    i64 degree = 0; // N = n! V(polytope)
    std::vector<std::pair<i64, std::optional<Rat>>> valuations; // (i, ord_q C_i)
    RationalPolygon polygon;
};

/// Full pipeline: exponential sums for k = 1..N+2, L-coefficients, tail
/// check C_{N+1} = C_{N+2} = 0, pi-adic valuations, lower hull.
NewtonPolygonResult newton_polygon(const LaurentPoly& f, i64 p, int a,
                                   const ZetaConfig& cfg = {});

} // namespace nhpoly
