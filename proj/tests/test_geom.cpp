#include <doctest.h>

#include <cmath>

#include "tilerepair/geom.hpp"

using namespace tilerepair;

TEST_CASE("orientation basic triples") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::CCW);
    CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == Orientation::CW);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == Orientation::Collinear);
}

TEST_CASE("orientation near-degenerate uses exact fallback") {
    // Points on a line with a tiny perturbation far below the naive double
    // cross product's noise floor for these magnitudes.
    Point p{1e8, 1e8};
    Point q{2e8, 2e8};
    Point r{3e8, 3e8};
    CHECK(orientation(p, q, r) == Orientation::Collinear);
    Point r2{3e8, std::nextafter(3e8, 4e8)};
    CHECK(orientation(p, q, r2) == Orientation::CCW);
    Point r3{3e8, std::nextafter(3e8, 0.0)};
    CHECK(orientation(p, q, r3) == Orientation::CW);
}

TEST_CASE("orientation is antisymmetric on random triples") {
    std::uint64_t s = 42;
    auto rnd = [&] {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        return static_cast<double>(s % 2000001) / 1000.0 - 1000.0;
    };
    for (int k = 0; k < 500; ++k) {
        Point a{rnd(), rnd()}, b{rnd(), rnd()}, c{rnd(), rnd()};
        int o = static_cast<int>(orientation(a, b, c));
        CHECK(static_cast<int>(orientation(b, a, c)) == -o);
        CHECK(static_cast<int>(orientation(a, c, b)) == -o);
        CHECK(static_cast<int>(orientation(c, a, b)) == o);
    }
}

TEST_CASE("point_on_segment") {
    Segment s{{0, 0}, {2, 2}};
    CHECK(point_on_segment({1, 1}, s));
    CHECK(point_on_segment({0, 0}, s));
    CHECK(point_on_segment({2, 2}, s));
    CHECK_FALSE(point_on_segment({3, 3}, s));
    CHECK_FALSE(point_on_segment({1, 1.0000001}, s));
}

TEST_CASE("segment intersection kinds") {
    auto x = segment_intersection({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
    REQUIRE(x.kind == SegIntersection::Kind::AtPoint);
    CHECK(x.p.x == doctest::Approx(1.0));
    CHECK(x.p.y == doctest::Approx(1.0));

    x = segment_intersection({{0, 0}, {1, 0}}, {{1, 0}, {1, 1}});
    REQUIRE(x.kind == SegIntersection::Kind::AtPoint);
    CHECK(x.p == Point{1, 0});

    x = segment_intersection({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
    REQUIRE(x.kind == SegIntersection::Kind::Overlap);
    CHECK(std::min(x.sub.a.x, x.sub.b.x) == doctest::Approx(1.0));
    CHECK(std::max(x.sub.a.x, x.sub.b.x) == doctest::Approx(2.0));

    x = segment_intersection({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}});
    CHECK(x.kind == SegIntersection::Kind::Empty);

    // touch of an endpoint against an interior point
    x = segment_intersection({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}});
    REQUIRE(x.kind == SegIntersection::Kind::AtPoint);
    CHECK(x.p == Point{1, 0});
}

TEST_CASE("segment and point distances") {
    CHECK(point_segment_distance({0, 1}, {{-1, 0}, {1, 0}}) == doctest::Approx(1.0));
    CHECK(point_segment_distance({2, 0}, {{-1, 0}, {1, 0}}) == doctest::Approx(1.0));
    CHECK(segment_distance({{0, 0}, {1, 0}}, {{0, 2}, {1, 2}}) == doctest::Approx(2.0));
    CHECK(segment_distance({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}) == doctest::Approx(0.0));
}

TEST_CASE("ring area, perimeter, containment") {
    Ring sq{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
    CHECK(signed_area(sq) == doctest::Approx(4.0));
    CHECK(perimeter(sq) == doctest::Approx(8.0));
    CHECK(point_in_ring({1, 1}, sq) == 1);
    CHECK(point_in_ring({2, 1}, sq) == 0);
    CHECK(point_in_ring({0, 0}, sq) == 0);
    CHECK(point_in_ring({3, 1}, sq) == -1);
    CHECK(point_in_ring({1, -0.001}, sq) == -1);
}

TEST_CASE("point_in_ring on a concave ring") {
    // L-shape
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    CHECK(point_in_ring({0.5, 0.5}, L) == 1);
    CHECK(point_in_ring({1.5, 0.5}, L) == 1);
    CHECK(point_in_ring({1.5, 1.5}, L) == -1);
    CHECK(point_in_ring({1, 1}, L) == 0);
    CHECK(point_in_ring({1, 1.5}, L) == 0);
}

TEST_CASE("vertex classification") {
    Ring sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(classify_vertex(sq, k) == VertexClass::Convex);
        CHECK(interior_angle(sq, k) == doctest::Approx(3.14159265358979 / 2));
    }
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    CHECK(classify_vertex(L, 3) == VertexClass::Reflex);
    CHECK(interior_angle(L, 3) == doctest::Approx(3 * 3.14159265358979 / 2));
    // straight angle counts as reflex
    Ring flat{{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}};
    CHECK(classify_vertex(flat, 1) == VertexClass::Reflex);
    CHECK(interior_angle(flat, 1) == doctest::Approx(3.14159265358979));
}

TEST_CASE("incenter of a 3-4-5 triangle") {
    Point c = incenter({0, 0}, {4, 0}, {0, 3});
    CHECK(c.x == doctest::Approx(1.0));
    CHECK(c.y == doctest::Approx(1.0));
}

TEST_CASE("angle bisector directions") {
    // Convex right angle at origin of a CCW square corner: bisector points
    // into the interior along (1,1)/sqrt(2).
    Ray r = angle_bisector({0, 1}, {0, 0}, {1, 0});
    CHECK(r.dir.x == doctest::Approx(std::sqrt(0.5)));
    CHECK(r.dir.y == doctest::Approx(std::sqrt(0.5)));

    // Reflex corner of the L-shape at (1,1): interior is below-left, the
    // bisector of the 270-degree interior angle points along (-1,-1)/sqrt(2).
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    Ray b = angle_bisector_ray(L, 3);
    CHECK(b.dir.x == doctest::Approx(-std::sqrt(0.5)));
    CHECK(b.dir.y == doctest::Approx(-std::sqrt(0.5)));

    // Straight angle: bisector is the left-hand perpendicular of travel.
    Ray f = angle_bisector({0, 0}, {1, 0}, {2, 0});
    CHECK(f.dir.x == doctest::Approx(0.0));
    CHECK(f.dir.y == doctest::Approx(1.0));
}

TEST_CASE("convex hull") {
    std::vector<Point> pts{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0.5}};
    auto h = convex_hull(pts);
    REQUIRE(h.size() == 4);
    // CCW order
    std::vector<Point> hp;
    for (auto i : h) hp.push_back(pts[i]);
    CHECK(signed_area(hp) == doctest::Approx(4.0));
}

TEST_CASE("non-finite coordinates are rejected") {
    CHECK_THROWS_AS(Point(std::nan(""), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Point(0.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}
