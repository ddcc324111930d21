#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nhpoly/gf.hpp"
#include "nhpoly/lattice.hpp"
#include "nhpoly/zeta.hpp"

namespace nhpoly {

enum class FamilyKind { Diagonal, Reflection, Kloosterman };

/// One member of the built-in families: x_1^{m_1} + ... + x_n^{m_n} plus
/// either the inverses of the first j monomials (Reflection) or the single
/// monomial (x_1...x_j)^{-1} (Kloosterman).  Coefficients default to 1 and
/// may be overridden per support point.
struct FamilySpec {
    FamilyKind kind = FamilyKind::Diagonal;
    int n = 0;
    std::vector<i64> m;
    int j = 0; // 0 for Diagonal, 1..n otherwise
    std::map<LatticePoint, std::vector<i64>> coeffs;
};

LaurentPoly build(const FamilySpec& spec);

/// D* = LCM(m_1..m_n); ordinarity holds exactly for p = 1 mod D*.
i64 dstar(const FamilySpec& spec);

/// Non-degeneracy criterion for the built-in families: p does not divide D*.
bool nondegenerate_criterion(const FamilySpec& spec, i64 p);

enum class Expected { NPequalsHP, NPstrictlyAbove };

/// Theory prediction for a non-degenerate family member whose support is
/// vertices (plus interior points at most).
Expected ordinarity_expectation(const FamilySpec& spec, i64 p);

struct Witness {
    std::vector<LatticePoint> face_vertices;
    int r = 0;                      // extension degree of the witness field
    std::vector<FieldElement> point;
};

struct FalsifierConfig {
    i64 field_budget = i64(1) << 26;
    i64 table_budget = i64(1) << 22;
    double point_budget = 1e9;
    int threads = 1;
};

/// Searches every closed face not containing the origin for a common torus
/// zero of all n partials of the face restriction, over F_{p^r} for
/// r = 1..r_max.  A witness refutes non-degeneracy; NoneFound proves
/// nothing (the definition quantifies over the algebraic closure).
std::optional<Witness> nondegeneracy_falsifier(const LaurentPoly& f, i64 p,
                                               int r_max,
                                               const FalsifierConfig& cfg = {});

std::string kind_name(FamilyKind k);

} // namespace nhpoly
