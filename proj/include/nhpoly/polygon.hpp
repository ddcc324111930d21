#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nhpoly/rational.hpp"

namespace nhpoly {

/// Lower-convex polygon in Q^2 starting at (0,0): vertex list plus the
/// equivalent (slope, horizontal length) segment list with strictly
/// increasing slopes.
struct RationalPolygon {
    std::vector<std::pair<Rat, Rat>> vertices; // first is (0,0)

    struct Segment {
        Rat slope;
        i64 length; // horizontal
    };
    std::vector<Segment> segments;

    const std::pair<Rat, Rat>& endpoint() const { return vertices.back(); }

    /// Expand segments into one slope per unit of horizontal length.
    std::vector<Rat> slope_multiset() const;

    /// Piecewise-linear value at x; x must lie within [0, endpoint.x].
    Rat value_at(const Rat& x) const;

    /// Build from vertex chain (collinear points are merged).
    static RationalPolygon from_vertices(std::vector<std::pair<Rat, Rat>> pts);

    /// Build from a multiset of (slope, length) pieces; pieces are sorted
    /// and equal slopes merged.
    static RationalPolygon from_slopes(std::vector<Segment> pieces);

    friend bool operator==(const RationalPolygon& a, const RationalPolygon& b) {
        return a.vertices == b.vertices;
    }
};

/// Lower convex hull of (x, y) points with integer x; entries with no value
/// (infinite) are skipped.  A point at x = 0 with value 0 must be present.
RationalPolygon lower_hull(const std::vector<std::pair<i64, std::optional<Rat>>>& pts);

enum class PolygonCompare { Equal, StrictlyAboveSomewhere, Crossing };

/// Pointwise comparison of `upper` (a Newton polygon) against `lower` (a
/// Hodge polygon) at every vertex x of either polygon.  Throws
/// EndpointMismatch unless the final vertices agree exactly.
PolygonCompare compare_polygons(const RationalPolygon& upper,
                                const RationalPolygon& lower);

} // namespace nhpoly
