#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nhpoly/rational.hpp"

namespace nhpoly {

/// Dense encoding of an element of F_{p^d}: sum of digit_i * p^i where the
/// digits are the coefficients of the residue polynomial.
using felt = std::uint64_t;

/// Element in the representation the rest of the world sees: d coefficients
/// in [0, p).
struct FieldElement {
    std::vector<int> rep;
};

struct FieldConfig {
    i64 field_budget = i64(1) << 26; // refuse fields larger than this
    i64 table_budget = i64(1) << 22; // build log/exp tables up to this size
    /// 0 = lexicographically smallest monic irreducible modulus, 1 = next
    /// one, ...  Everything observable downstream is modulus-independent;
    /// the index exists so tests can prove that.
    int modulus_index = 0;
};

/// Immutable description of F_{p^d}.  Construction verifies the modulus is
/// irreducible and finds a multiplicative generator; all later operations
/// are const and safe to share across threads.
class FieldCtx {
public:
    i64 p = 0;
    int d = 0;
    i64 q = 0;                  // p^d
    std::vector<int> modulus;   // monic: x^d + sum modulus[i] x^i
    felt generator = 0;         // smallest dense generator of the unit group

    bool has_tables() const { return !exp_tbl_.empty(); }

    felt add(felt a, felt b) const;
    felt sub(felt a, felt b) const;
    felt neg(felt a) const;
    felt mul(felt a, felt b) const;
    felt inv(felt a) const;
    /// a^e for nonzero a with any integer exponent (reduced mod q-1);
    /// nonnegative exponents also accept a = 0.
    felt pow(felt a, i64 e) const;
    felt from_int(i64 c) const; // embed Z -> F_p subfield
    int trace(felt a) const;    // Tr to F_p, via the linear form

    std::vector<int> to_digits(felt a) const;
    felt from_digits(std::span<const int> digits) const;
    FieldElement to_element(felt a) const { return FieldElement{to_digits(a)}; }
    felt from_element(const FieldElement& e) const {
        return from_digits(e.rep);
    }

    i64 log_of(felt a) const; // discrete log (tables or walk); a != 0

    /// Digit-space multiply: out = a * b mod modulus.  Exposed for the
    /// table-free walks in the point-counting engine.
    void mul_digits(const int* a, const int* b, int* out) const;
    int trace_digits(const int* digits) const;

    const std::vector<uint32_t>& exp_table() const { return exp_tbl_; }
    const std::vector<uint32_t>& log_table() const { return log_tbl_; }
    const std::vector<int>& trace_basis() const { return tr_basis_; }

private:
    friend FieldCtx field_create(i64 p, int d, const FieldConfig& cfg);

    std::vector<uint32_t> exp_tbl_; // log -> dense, size q-1 (when built)
    std::vector<uint32_t> log_tbl_; // dense -> log, size q
    std::vector<int> tr_basis_;     // Tr(xbar^j) for j < d
    std::vector<std::vector<int>> red_rows_; // x^{d+j} mod modulus
};

FieldCtx field_create(i64 p, int d, const FieldConfig& cfg = {});

int trace(const FieldCtx& ctx, const FieldElement& x);

/// Laurent-term evaluation on a torus point (all coordinates nonzero).
struct EvalTerm {
    felt coef;
    std::vector<i64> exp;
};
felt evaluate(const FieldCtx& ctx, const std::vector<EvalTerm>& terms,
              const std::vector<felt>& point);

/// The canonical root of the canonical degree-a modulus inside ctx
/// (ctx.d must be a multiple of a); used to embed F_{p^a} coefficients.
felt embed_subfield_root(const FieldCtx& ctx, int a);

/// Walks z, z*g, z*g^2, ... in digit space, invoking fn(step, digits).
template <typename F>
void walk_multiplicative(const FieldCtx& ctx, felt start, felt g,
                         std::uint64_t steps, F&& fn) {
    std::vector<int> z = ctx.to_digits(start);
    std::vector<int> gd = ctx.to_digits(g);
    std::vector<int> tmp(ctx.d);
    for (std::uint64_t s = 0; s < steps; ++s) {
        fn(s, z.data());
        ctx.mul_digits(z.data(), gd.data(), tmp.data());
        std::swap(z, tmp);
    }
}

} // namespace nhpoly
