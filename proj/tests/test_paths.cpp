#include <doctest.h>

#include <cmath>
#include <queue>

#include "tilerepair/paths.hpp"

using namespace tilerepair;

namespace {

// Oracle: two polygon vertices see each other iff the open segment between
// them stays inside the closed polygon.  Checked by splitting the segment at
// every boundary intersection and testing each piece's midpoint.
bool visible(const Ring& poly, std::size_t i, std::size_t j) {
    Point a = poly.pts[i], b = poly.pts[j];
    Segment s{a, b};
    Point d = b - a;
    double dd = dot(d, d);
    std::vector<double> params{0.0, 1.0};
    std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        Segment e{poly.at(k), poly.at(k + 1)};
        auto x = segment_intersection(s, e);
        if (x.kind == SegIntersection::Kind::AtPoint)
            params.push_back(dot(x.p - a, d) / dd);
        else if (x.kind == SegIntersection::Kind::Overlap) {
            params.push_back(dot(x.sub.a - a, d) / dd);
            params.push_back(dot(x.sub.b - a, d) / dd);
        }
    }
    std::sort(params.begin(), params.end());
    for (std::size_t k = 0; k + 1 < params.size(); ++k) {
        double t = 0.5 * (params[k] + params[k + 1]);
        if (t <= 0.0 || t >= 1.0) continue;
        Point mid = a + t * d;
        if (point_in_ring(mid, poly) < 0) {
            // tolerate fp drift: a midpoint of a boundary-collinear piece can
            // land marginally outside
            double db = 1e300;
            for (std::size_t k = 0; k < n; ++k)
                db = std::min(db, point_segment_distance(mid, {poly.at(k), poly.at(k + 1)}));
            if (db > 1e-12) return false;
        }
    }
    return true;
}

// Oracle: Dijkstra over the full visibility graph.
double oracle_distance(const Ring& poly, std::size_t a, std::size_t b) {
    std::size_t n = poly.size();
    std::vector<double> dst(n, 1e300);
    dst[a] = 0.0;
    using QE = std::pair<double, std::size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> q;
    q.push({0.0, a});
    while (!q.empty()) {
        auto [dv, v] = q.top();
        q.pop();
        if (dv > dst[v]) continue;
        for (std::size_t w = 0; w < n; ++w) {
            if (w == v || !visible(poly, v, w)) continue;
            double nd = dv + dist(poly.pts[v], poly.pts[w]);
            if (nd < dst[w] - 1e-15) {
                dst[w] = nd;
                q.push({nd, w});
            }
        }
    }
    return dst[b];
}

// Random star-shaped polygon around the origin (always simple).
Ring random_star(std::uint64_t seed, std::size_t n) {
    auto next = [&] {
        seed ^= seed << 13; seed ^= seed >> 7; seed ^= seed << 17;
        return static_cast<double>(seed % 1000000) / 1000000.0;
    };
    std::vector<double> angles;
    for (std::size_t i = 0; i < n; ++i)
        angles.push_back(2 * 3.14159265358979323846 * next());
    std::sort(angles.begin(), angles.end());
    Ring r;
    for (double t : angles) {
        double rad = 0.5 + 2.0 * next();
        r.pts.push_back({rad * std::cos(t), rad * std::sin(t)});
    }
    if (signed_area(r) < 0) std::reverse(r.pts.begin(), r.pts.end());
    return r;
}

}  // namespace

TEST_CASE("triangulation counts and coverage") {
    Ring sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(triangulate(sq).size() == 2);
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    auto tris = triangulate(L);
    CHECK(tris.size() == 4);
    double total = 0;
    for (const auto& t : tris)
        total += signed_area({L.pts[t[0]], L.pts[t[1]], L.pts[t[2]]});
    CHECK(total == doctest::Approx(signed_area(L)));
}

TEST_CASE("triangulation of random star polygons covers the area") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Ring poly = random_star(s * 7919, 12);
        auto tris = triangulate(poly);
        REQUIRE(tris.size() == poly.size() - 2);
        double total = 0;
        for (const auto& t : tris) {
            double a = signed_area({poly.pts[t[0]], poly.pts[t[1]], poly.pts[t[2]]});
            CHECK(a >= 0.0);
            total += a;
        }
        CHECK(total == doctest::Approx(signed_area(poly)));
    }
}

TEST_CASE("shortest path in an L-shaped region bends at the reflex corner") {
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    auto p = shortest_path(L, 1, 4);  // (2,0) -> (1,2)
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 1);
    CHECK(p[1] == 3);  // via the reflex corner (1,1)
    CHECK(p[2] == 4);
    CHECK(path_length(L, p) == doctest::Approx(std::sqrt(2.0) + 1.0));
}

TEST_CASE("shortest path across a convex polygon is the chord") {
    Ring sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    auto p = shortest_path(sq, 0, 2);
    REQUIRE(p.size() == 2);
    CHECK(path_length(sq, p) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("collinear boundary vertices on the path are included") {
    Ring poly{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {0, 1}}};
    auto p = shortest_path(poly, 0, 3);  // along the bottom edge
    REQUIRE(p.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(p[k] == k);
}

TEST_CASE("shortest path matches the Dijkstra oracle on random polygons") {
    for (std::uint64_t s = 1; s <= 30; ++s) {
        Ring poly = random_star(s * 104729 + 17, 14);
        Triangulation tn = build_triangulation(poly);
        std::size_t n = poly.size();
        for (std::size_t a = 0; a < n; a += 3) {
            for (std::size_t b = a + 1; b < n; b += 4) {
                double got = path_length(poly, shortest_path(poly, tn, a, b));
                double want = oracle_distance(poly, a, b);
                CHECK(got == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("path endpoints and interior stay on polygon vertices") {
    for (std::uint64_t s = 40; s <= 50; ++s) {
        Ring poly = random_star(s * 31 + 5, 16);
        auto p = shortest_path(poly, 0, poly.size() / 2);
        CHECK(p.front() == 0);
        CHECK(p.back() == poly.size() / 2);
        for (std::size_t v : p) CHECK(v < poly.size());
        for (std::size_t k = 0; k + 1 < p.size(); ++k) CHECK(p[k] != p[k + 1]);
    }
}

TEST_CASE("boundary_arc and outward convexity") {
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    auto arc = boundary_arc(L, 2, 4);
    REQUIRE(arc.size() == 3);
    CHECK(arc[1] == 3);
    CHECK(is_outward_convex(L, 2, 4));   // interior vertex (1,1) is reflex
    CHECK_FALSE(is_outward_convex(L, 1, 3));  // (2,1) is convex
    CHECK(is_outward_convex(L, 0, 1));   // no interior vertices
}

TEST_CASE("convexify replaces an arc by the shortest path and carves the rest") {
    // Gap shaped like a square with a notch pushed into the top edge.
    Ring g{{{0, 0}, {4, 0}, {4, 4}, {3, 4}, {2, 1.5}, {1, 4}, {0, 4}}};
    // Arc from vertex 2 (4,4) to vertex 6 (0,4) crosses the notch.
    auto res = convexify_sub_boundary(g, 2, 6);
    REQUIRE(res.replacement.size() >= 2);
    CHECK(res.replacement.front() == 2);
    CHECK(res.replacement.back() == 6);
    // carved regions lie between arc and path; total area is the difference
    double carved = 0;
    for (const Ring& r : res.carved) carved += signed_area(r);
    CHECK(carved > 0.0);
    // path should route via the notch tip (vertex 4)
    bool via_tip = false;
    for (std::size_t v : res.replacement) via_tip |= (v == 4);
    CHECK(via_tip);
}

TEST_CASE("convexify of an already outward convex arc carves nothing") {
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    auto res = convexify_sub_boundary(L, 2, 4);
    REQUIRE(res.replacement.size() == 3);
    CHECK(res.carved.empty());
}

TEST_CASE("representative point is strictly inside") {
    Ring L{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    CHECK(point_in_ring(representative_point(L), L) == 1);
    for (std::uint64_t s = 60; s <= 80; ++s) {
        Ring poly = random_star(s * 131 + 7, 10);
        CHECK(point_in_ring(representative_point(poly), poly) == 1);
    }
}
