#include "doctest.h"

#include "nhpoly/polygon.hpp"
#include "nhpoly/errors.hpp"

using namespace nhpoly;

namespace {

RationalPolygon poly_of(std::initializer_list<std::pair<i64, Rat>> pts) {
    std::vector<std::pair<i64, std::optional<Rat>>> v;
    for (auto& [x, y] : pts) v.emplace_back(x, y);
    return lower_hull(v);
}

} // namespace

TEST_CASE("lower hull of already-convex points") {
    auto p = poly_of({{0, Rat(0)}, {1, Rat(0)}, {2, Rat(1)}, {3, Rat(3)}});
    REQUIRE(p.segments.size() == 3);
    CHECK(p.segments[0].slope == Rat(0));
    CHECK(p.segments[1].slope == Rat(1));
    CHECK(p.segments[2].slope == Rat(2));
    CHECK(p.endpoint() == std::pair<Rat, Rat>(Rat(3), Rat(3)));
}

TEST_CASE("lower hull drops interior points") {
    auto p = poly_of({{0, Rat(0)}, {1, Rat(5)}, {2, Rat(0)}});
    REQUIRE(p.vertices.size() == 2);
    CHECK(p.vertices[1] == std::pair<Rat, Rat>(Rat(2), Rat(0)));
}

TEST_CASE("lower hull skips infinite entries") {
    std::vector<std::pair<i64, std::optional<Rat>>> pts = {
        {0, Rat(0)}, {1, std::nullopt}, {2, Rat(1)}};
    auto p = lower_hull(pts);
    REQUIRE(p.segments.size() == 1);
    CHECK(p.segments[0].slope == Rat(1, 2));
    CHECK(p.segments[0].length == 2);
}

TEST_CASE("lower hull requires the origin point") {
    std::vector<std::pair<i64, std::optional<Rat>>> pts = {{1, Rat(1)}};
    CHECK_THROWS_AS(lower_hull(pts), EmptyInput);
    CHECK_THROWS_AS(lower_hull({}), EmptyInput);
}

TEST_CASE("polygon from slope multiset merges and sorts") {
    auto p = RationalPolygon::from_slopes(
        {{Rat(1), 1}, {Rat(0), 1}, {Rat(1), 1}, {Rat(1, 2), 2}});
    REQUIRE(p.segments.size() == 3);
    CHECK(p.segments[0].slope == Rat(0));
    CHECK(p.segments[1].slope == Rat(1, 2));
    CHECK(p.segments[1].length == 2);
    CHECK(p.segments[2].length == 2);
    auto ms = p.slope_multiset();
    CHECK(ms == std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1, 2), Rat(1), Rat(1)});
}

TEST_CASE("polygon evaluation is piecewise linear") {
    auto p = poly_of({{0, Rat(0)}, {2, Rat(0)}, {4, Rat(3)}});
    CHECK(p.value_at(Rat(1)) == Rat(0));
    CHECK(p.value_at(Rat(3)) == Rat(3, 2));
    CHECK(p.value_at(Rat(4)) == Rat(3));
    CHECK_THROWS_AS(p.value_at(Rat(5)), OutOfRange);
}

TEST_CASE("polygon comparison verdicts") {
    auto hp = poly_of({{0, Rat(0)}, {1, Rat(0)}, {2, Rat(Rat(1, 3) + Rat(0))},
                       {3, Rat(1)}});
    // identical
    CHECK(compare_polygons(hp, hp) == PolygonCompare::Equal);

    // np strictly above: slopes {0, 1/2, 1/2} vs hp slopes {0, 1/3, 2/3}
    auto np = RationalPolygon::from_slopes({{Rat(0), 1}, {Rat(1, 2), 2}});
    auto hp2 = RationalPolygon::from_slopes({{Rat(0), 1}, {Rat(1, 3), 1},
                                             {Rat(2, 3), 1}});
    CHECK(compare_polygons(np, hp2) == PolygonCompare::StrictlyAboveSomewhere);
    // and the reverse crosses below
    CHECK(compare_polygons(hp2, np) == PolygonCompare::Crossing);

    // mismatched endpoints are an error
    auto shorter = RationalPolygon::from_slopes({{Rat(0), 1}, {Rat(1), 1}});
    CHECK_THROWS_AS(compare_polygons(np, shorter), EndpointMismatch);
}
