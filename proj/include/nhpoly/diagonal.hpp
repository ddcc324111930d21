#pragma once

#include <gmpxx.h>

#include <vector>

#include "nhpoly/polygon.hpp"
#include "nhpoly/rational.hpp"

namespace nhpoly {

/// Square integer matrix with nonzero determinant: columns are the exponent
/// vectors of a diagonal Laurent polynomial.
using IntMatrix = std::vector<std::vector<i64>>;

struct SmithResult {
    IntMatrix u, s, v;                  // u * m * v = s
    std::vector<i64> invariant_factors; // diagonal of s, each dividing the next
};

SmithResult smith_normal_form(const IntMatrix& m);

i64 largest_invariant_factor(const IntMatrix& m);

/// Element of S(Delta): r in [0,1)^n with M r^T integral, stored as
/// numerators over the common denominator |det M|.
struct SDeltaElement {
    std::vector<i64> num;
    i64 den = 1;
};

struct SDeltaConfig {
    i64 enumeration_budget = 1'000'000;
};

/// All |det M| solutions, enumerated through Smith coordinates.
std::vector<SDeltaElement> sdelta_group(const IntMatrix& m,
                                        const SDeltaConfig& cfg = {});

/// Newton-polygon slopes of the diagonal polynomial with exponent matrix M
/// over F_p: partition S(Delta) into multiplication-by-p orbits; every
/// element contributes its orbit's average norm.  Sorted multiset of
/// (slope, multiplicity), total length |det M|.
std::vector<std::pair<Rat, i64>> orbit_slopes(const IntMatrix& m, i64 p,
                                              const SDeltaConfig& cfg = {});

RationalPolygon polygon_from_slopes(const std::vector<std::pair<Rat, i64>>& slopes);

} // namespace nhpoly
