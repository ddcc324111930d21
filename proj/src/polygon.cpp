#include "nhpoly/polygon.hpp"

#include <algorithm>
#include <set>

#include "nhpoly/errors.hpp"

namespace nhpoly {

namespace {

Rat cross(const std::pair<Rat, Rat>& o, const std::pair<Rat, Rat>& a,
          const std::pair<Rat, Rat>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

} // namespace

std::vector<Rat> RationalPolygon::slope_multiset() const {
    std::vector<Rat> out;
    for (const Segment& s : segments)
        for (i64 i = 0; i < s.length; ++i) out.push_back(s.slope);
    return out;
}

Rat RationalPolygon::value_at(const Rat& x) const {
    if (x < Rat(0) || x > endpoint().first)
        throw OutOfRange("polygon evaluated outside [0, " +
                         endpoint().first.str() + "]");
    for (size_t i = 1; i < vertices.size(); ++i) {
        if (x <= vertices[i].first) {
            const auto& a = vertices[i - 1];
            const auto& b = vertices[i];
            return a.second +
                   (x - a.first) * (b.second - a.second) / (b.first - a.first);
        }
    }
    return vertices.back().second;
}

RationalPolygon RationalPolygon::from_vertices(
    std::vector<std::pair<Rat, Rat>> pts) {
    if (pts.empty()) throw EmptyInput("polygon needs at least one vertex");
    RationalPolygon poly;
    poly.vertices.push_back(pts[0]);
    for (size_t i = 1; i < pts.size(); ++i) {
        // merge collinear continuation
        if (poly.vertices.size() >= 2) {
            const auto& a = poly.vertices[poly.vertices.size() - 2];
            const auto& b = poly.vertices.back();
            if (cross(a, b, pts[i]).is_zero()) {
                poly.vertices.back() = pts[i];
                continue;
            }
        }
        poly.vertices.push_back(pts[i]);
    }
    for (size_t i = 1; i < poly.vertices.size(); ++i) {
        Rat dx = poly.vertices[i].first - poly.vertices[i - 1].first;
        Rat dy = poly.vertices[i].second - poly.vertices[i - 1].second;
        if (!dx.is_integer() || dx.num() <= 0)
            throw OutOfRange("polygon segment with non-positive or fractional "
                             "horizontal length");
        poly.segments.push_back(Segment{dy / dx, dx.num()});
    }
    for (size_t i = 1; i < poly.segments.size(); ++i)
        if (!(poly.segments[i - 1].slope < poly.segments[i].slope))
            throw OutOfRange("polygon slopes are not strictly increasing");
    return poly;
}

RationalPolygon RationalPolygon::from_slopes(std::vector<Segment> pieces) {
    std::sort(pieces.begin(), pieces.end(),
              [](const Segment& a, const Segment& b) { return a.slope < b.slope; });
    std::vector<Segment> merged;
    for (const Segment& s : pieces) {
        if (s.length == 0) continue;
        if (!merged.empty() && merged.back().slope == s.slope)
            merged.back().length += s.length;
        else
            merged.push_back(s);
    }
    std::vector<std::pair<Rat, Rat>> pts;
    Rat x(0), y(0);
    pts.emplace_back(x, y);
    for (const Segment& s : merged) {
        x += Rat(s.length);
        y += s.slope * Rat(s.length);
        pts.emplace_back(x, y);
    }
    return from_vertices(std::move(pts));
}

RationalPolygon lower_hull(
    const std::vector<std::pair<i64, std::optional<Rat>>>& pts) {
    std::vector<std::pair<Rat, Rat>> finite;
    for (const auto& [x, y] : pts)
        if (y) finite.emplace_back(Rat(x), *y);
    if (finite.empty()) throw EmptyInput("lower_hull of no finite points");
    std::sort(finite.begin(), finite.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!(finite.front().first == Rat(0)) || !finite.front().second.is_zero())
        throw EmptyInput("lower_hull requires the point (0, 0)");
    std::vector<std::pair<Rat, Rat>> hull;
    for (const auto& p : finite) {
        while (hull.size() >= 2 &&
               !(cross(hull[hull.size() - 2], hull.back(), p) > Rat(0)))
            hull.pop_back();
        hull.push_back(p);
    }
    return RationalPolygon::from_vertices(std::move(hull));
}

PolygonCompare compare_polygons(const RationalPolygon& upper,
                                const RationalPolygon& lower) {
    if (!(upper.endpoint().first == lower.endpoint().first) ||
        !(upper.endpoint().second == lower.endpoint().second))
        throw EndpointMismatch(
            "polygon endpoints differ: (" + upper.endpoint().first.str() + ", " +
            upper.endpoint().second.str() + ") vs (" +
            lower.endpoint().first.str() + ", " + lower.endpoint().second.str() +
            ")");
    std::set<Rat> xs;
    for (const auto& v : upper.vertices) xs.insert(v.first);
    for (const auto& v : lower.vertices) xs.insert(v.first);
    bool above = false, below = false;
    for (const Rat& x : xs) {
        Rat du = upper.value_at(x);
        Rat dl = lower.value_at(x);
        if (du > dl) above = true;
        if (du < dl) below = true;
    }
    if (below) return PolygonCompare::Crossing;
    if (above) return PolygonCompare::StrictlyAboveSomewhere;
    return PolygonCompare::Equal;
}

} // namespace nhpoly
