#pragma once

#include <vector>

#include "nhpoly/lattice.hpp"
#include "nhpoly/polygon.hpp"

namespace nhpoly {

/// W(k) = number of lattice points of weight k/D, for k = 0..k_max.
struct WeightVector {
    i64 D = 1;
    std::vector<i64> counts;

    i64 k_max() const { return static_cast<i64>(counts.size()) - 1; }
    i64 at(i64 k) const {
        if (k < 0 || k > k_max()) return 0;
        return counts[k];
    }
};

/// H(k) for k = 0..nD, the alternating binomial transform of W.
struct HodgeVector {
    i64 D = 1;
    int n = 0;
    std::vector<i64> numbers;
};

struct EnumeratorConfig {
    i64 cell_budget = 1'000'000'000;
};

/// Generic weight-number enumerator: scan the integer bounding box of
/// (k_max/D) * poly and classify each point by exact weight.
WeightVector weight_numbers(const Polytope& poly, i64 k_max,
                            const EnumeratorConfig& cfg = {});
/// Same with the default guard band k_max = (n+2) * D.
WeightVector weight_numbers(const Polytope& poly,
                            const EnumeratorConfig& cfg = {});

HodgeVector hodge_numbers(const WeightVector& w, int n);

RationalPolygon hodge_polygon(const HodgeVector& h);

/// Closed forms for the built-in families.  Each one agrees with
/// weight_numbers on its validity domain; the test suite enforces that.
i64 diag_equilateral_W(int n, i64 m, i64 k);
i64 diag_equilateral_H(int n, i64 m, i64 k);

/// Restricted partition count #{(x1,x2) >= 0 : m2*x1 + m1*x2 = k} by the
/// two-coin partial-fraction formula, gcd(m1,m2) = 1.
i64 popoviciu_W(i64 m1, i64 m2, i64 k);

/// Weight numbers of the reflection family: equilateral closed form when
/// all m_i agree, inclusion-exclusion recursion otherwise (base cases from
/// the diagonal closed forms or the enumerator).
i64 reflection_W(int n, const std::vector<i64>& m, int j, i64 k);

i64 kloosterman_equilateral_W(int n, i64 m, int j, i64 k);

/// Weight numbers of K^j over two distinct primes.  The j = 1 correction
/// counts multiples of m1 in [D, 2D); the gcd-based published form
/// overcounts there (see kloosterman_2d_correction_published).
i64 kloosterman_2d_W(i64 m1, i64 m2, int j, i64 k);

/// The correction term as originally published: gcd(k, m1*m2) > 1 on
/// [D, 2D).  Overcounts for j = 1 at multiples of m2 alone, and for
/// composite m_i (e.g. (4,3) at k = 14).  Kept for the regression tests
/// that document those failures; kloosterman_2d_W does not use it for j=1.
i64 kloosterman_2d_correction_published(i64 m1, i64 m2, int j, i64 k);

} // namespace nhpoly
