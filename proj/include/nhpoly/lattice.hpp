#pragma once

#include <optional>
#include <vector>

#include "nhpoly/rational.hpp"

namespace nhpoly {

/// Exponent vector in Z^n.  All geometry in this module is exact; there is
/// no floating point anywhere.
using LatticePoint = std::vector<i64>;

enum class FacetKind { ThroughOrigin, NotThroughOrigin };

/// One codimension-1 face of the polytope.  A NotThroughOrigin facet is
/// normalized so its hyperplane is <normal, x> = 1 with the polytope on the
/// <= 1 side; a ThroughOrigin facet has a primitive integer normal with the
/// polytope on the >= 0 side.
struct Facet {
    std::vector<Rat> normal;
    FacetKind kind = FacetKind::NotThroughOrigin;
};

/// Convex hull of the origin and a set of lattice points, full-dimensional
/// in R^n.  Vertices include the origin exactly when it is a vertex.
struct Polytope {
    int dim = 0;
    std::vector<LatticePoint> vertices;
    std::vector<Facet> facets;
};

/// Weight of a lattice point: the least c >= 0 with u in c*polytope, or
/// infinite when u lies outside the cone spanned by the polytope.
struct Weight {
    std::optional<Rat> value; // nullopt = infinite

    bool is_finite() const { return value.has_value(); }
    const Rat& rat() const { return *value; }

    static Weight infinite() { return Weight{}; }
    static Weight finite(Rat r) { return Weight{std::move(r)}; }

    friend bool operator==(const Weight& a, const Weight& b) {
        return a.value == b.value;
    }
};

/// Brute-force facet enumeration over point subsets (n <= 6).  The support
/// together with the origin must span R^n.
Polytope hull_facets(const std::vector<LatticePoint>& support, int n);

Weight weight(const Polytope& poly, const LatticePoint& u);
bool cone_contains(const Polytope& poly, const LatticePoint& u);

/// LCM over not-through-origin facets of the least d clearing the facet
/// normal's denominators.
i64 denominator(const Polytope& poly);

/// n! * V(polytope), as an exact integer, by triangulating the cone over
/// each not-through-origin facet from the origin.
i64 normalized_volume(const Polytope& poly);

/// One proper closed face, described by the vertices lying on it.
struct Face {
    std::vector<int> vertex_ids;   // indices into Polytope::vertices, sorted
    std::vector<int> facet_ids;    // every facet active on all face vertices
    int dim = 0;
    bool contains_origin = false;
};

/// All proper closed faces (vertices, edges, ..., facets), deduplicated.
std::vector<Face> enumerate_faces(const Polytope& poly);

/// Exact membership of a lattice point in a given face.
bool face_contains(const Polytope& poly, const Face& face, const LatticePoint& u);

namespace detail {
/// Rank of a set of rational vectors (Gaussian elimination, exact).
int rank_of(std::vector<std::vector<Rat>> rows);
/// Solve the square system A x = b over Q; nullopt when A is singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b);
} // namespace detail

} // namespace nhpoly
