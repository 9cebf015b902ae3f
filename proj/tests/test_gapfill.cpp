#include <doctest.h>

#include <map>

#include "gap_gen.hpp"
#include "tilerepair/gapfill.hpp"
#include "tilerepair/visibility.hpp"

using namespace tilerepair;

namespace {

double total_area(const FillResult& res) {
    double a = 0;
    for (const auto& p : res.pieces) a += signed_area(p.region);
    return a;
}

std::map<int, double> area_by_owner(const FillResult& res) {
    std::map<int, double> m;
    for (const auto& p : res.pieces) m[p.owner] += signed_area(p.region);
    return m;
}

std::map<int, std::vector<Ring>> rings_by_owner(const FillResult& res) {
    std::map<int, std::vector<Ring>> m;
    for (const auto& p : res.pieces) m[p.owner].push_back(p.region);
    return m;
}

Unit make_rect(const std::string& id, double x0, double y0, double x1, double y1) {
    Unit u;
    u.id = id;
    u.outers.push_back(Ring{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
    return u;
}

}  // namespace

TEST_CASE("gap_subs: runs merge cyclically") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    g.tags = {7, 8, 7, 7};
    auto subs = gap_subs(g);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].owner == 8);
    CHECK(subs[0].start == 1);
    CHECK(subs[0].end == 2);
    CHECK(subs[1].owner == 7);
    CHECK(subs[1].start == 2);
    CHECK(subs[1].end == 1);

    g.tags = {5, 5, 5, 5};
    auto uni = gap_subs(g);
    REQUIRE(uni.size() == 1);
    CHECK(uni[0].owner == 5);
}

TEST_CASE("incenter split of a 3-4-5 triangle") {
    Ring tri{{{0, 0}, {4, 0}, {0, 3}}};
    auto pieces = fill_triangle_incenter(tri, {0, 1, 2});
    REQUIRE(pieces.size() == 3);
    // incenter of the 3-4-5 right triangle is (1,1)
    CHECK(pieces[0].region.pts[2].x == doctest::Approx(1.0));
    CHECK(pieces[0].region.pts[2].y == doctest::Approx(1.0));
    CHECK(signed_area(pieces[0].region) == doctest::Approx(2.0));  // bottom side
    double sum = 0;
    for (const auto& p : pieces) sum += signed_area(p.region);
    CHECK(sum == doctest::Approx(6.0));
}

TEST_CASE("one adjacent unit absorbs the gap") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
    g.tags = {3, 3, 3, 3};
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    REQUIRE(res.pieces.size() == 1);
    CHECK(res.pieces[0].owner == 3);
    CHECK(total_area(res) == doctest::Approx(4.0));

    // unit plus exterior arcs still absorbs
    g.tags = {3, kExteriorTag, 3, kExteriorTag};
    res = fill_gap(g);
    REQUIRE(res.filled);
    CHECK(res.pieces.size() == 1);
    CHECK(res.pieces[0].owner == 3);
}

TEST_CASE("two subs: split along the shortest path") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    g.tags = {0, 0, 1, 1};  // bottom+right -> 0, top+left -> 1
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    auto areas = area_by_owner(res);
    CHECK(areas[0] == doctest::Approx(0.5));
    CHECK(areas[1] == doctest::Approx(0.5));
    CHECK(total_area(res) == doctest::Approx(1.0));
}

TEST_CASE("two subs around a reflex pocket") {
    // L-shaped gap; the split path must bend around the reflex corner
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}}};
    g.tags = {0, 0, 0, 1, 1, 1};
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    CHECK(total_area(res) == doctest::Approx(5.0));
    auto areas = area_by_owner(res);
    CHECK(areas[0] > 0);
    CHECK(areas[1] > 0);
    CHECK(areas[0] + areas[1] == doctest::Approx(5.0));
}

TEST_CASE("three subs in a right triangle: bisectors concur at the incenter") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {4, 0}, {0, 3}}};
    g.tags = {0, 1, 2};
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    auto areas = area_by_owner(res);
    CHECK(areas[0] == doctest::Approx(2.0));  // bottom region, apex (1,1)
    CHECK(total_area(res) == doctest::Approx(6.0));
}

TEST_CASE("three subs in a trapezoid: interior triangle is incenter-split") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {4, 0}, {3, 2}, {1, 2}}};
    g.tags = {0, 1, 2, 2};
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    double gap_area = signed_area(g.poly);
    CHECK(total_area(res) == doctest::Approx(gap_area));
    auto areas = area_by_owner(res);
    CHECK(areas.size() == 3);
    for (const auto& [o, a] : areas) {
        CHECK(a > 0);
        (void)o;
    }
}

TEST_CASE("four subs in a square: bridge then recurse") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    g.tags = {0, 1, 2, 3};
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    CHECK(total_area(res) == doctest::Approx(1.0));
    auto areas = area_by_owner(res);
    REQUIRE(areas.size() == 4);
    // symmetry: the bridged pair (0,2) get equal shares, as do (1,3)
    CHECK(areas[0] == doctest::Approx(areas[2]));
    CHECK(areas[1] == doctest::Approx(areas[3]));
    // the bridged units end up sharing positive-length boundary
    auto rings = rings_by_owner(res);
    CHECK(shared_perimeter(rings[0], rings[2]) > 0.0);
}

TEST_CASE("three subs with an exterior arc: cut toward the nearest exterior vertex") {
    GapBoundary g;
    g.poly = Ring{{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}};
    g.tags = {0, 1, kExteriorTag, kExteriorTag, kExteriorTag};
    auto res = fill_gap(g);
    REQUIRE(res.filled);
    CHECK(total_area(res) == doctest::Approx(4.0));
    auto areas = area_by_owner(res);
    REQUIRE(areas.size() == 2);
    // cut runs from (1,0) to the tied-nearest exterior vertex (2,2)
    CHECK(areas[1] == doctest::Approx(1.0));
    CHECK(areas[0] == doctest::Approx(3.0));
}

TEST_CASE("randomized simplified gaps: conservation and bridged adjacency") {
    for (int m : {4, 5, 6, 8}) {
        for (std::uint64_t seed : {11ULL, 23ULL, 57ULL}) {
            auto inst = gaptest::make_simplified_gap(seed + static_cast<std::uint64_t>(m), m);
            GapBoundary g;
            g.poly = inst.gap;
            std::size_t n = g.poly.size();
            g.tags.assign(n, 0);
            for (std::size_t k = 0; k < inst.subs.size(); ++k) {
                std::size_t span = (inst.subs[k].second + n - inst.subs[k].first) % n;
                for (std::size_t e = 0; e < span; ++e)
                    g.tags[(inst.subs[k].first + e) % n] = static_cast<int>(k);
            }

            auto res = fill_gap(g);
            INFO("m=", m, " seed=", seed, " reason=", res.reason);
            REQUIRE(res.filled);
            double gap_area = signed_area(g.poly);
            CHECK(std::abs(total_area(res) - gap_area) <= 1e-8 * gap_area);
            for (const auto& p : res.pieces) {
                CHECK(p.owner >= 0);
                CHECK(p.owner < m);
                CHECK(signed_area(p.region) > 0);
            }

            // the units of the nearest strongly-mutually-visible pair must
            // share positive-length boundary after filling
            auto subs = gap_subs(g);
            Triangulation tn = build_triangulation(g.poly);
            struct Cand {
                double d;
                std::size_t i, j;
            };
            std::vector<Cand> cands;
            for (std::size_t i = 0; i < subs.size(); ++i)
                for (std::size_t j = i + 2; j < subs.size(); ++j) {
                    if (i == 0 && j == subs.size() - 1) continue;
                    ArcPair pair{subs[i].start, subs[i].end, subs[j].start, subs[j].end};
                    cands.push_back({pair_distance(g.poly, pair), i, j});
                }
            std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
                if (a.d != b.d) return a.d < b.d;
                if (a.i != b.i) return a.i < b.i;
                return a.j < b.j;
            });
            for (const Cand& c : cands) {
                ArcPair pair{subs[c.i].start, subs[c.i].end, subs[c.j].start, subs[c.j].end};
                if (!strongly_mutually_visible(g.poly, tn, pair)) continue;
                auto rings = rings_by_owner(res);
                CHECK(shared_perimeter(rings[subs[c.i].owner], rings[subs[c.j].owner]) > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("randomized gap with one exterior sub still fills") {
    for (std::uint64_t seed : {3ULL, 9ULL}) {
        auto inst = gaptest::make_simplified_gap(seed, 5);
        GapBoundary g;
        g.poly = inst.gap;
        std::size_t n = g.poly.size();
        g.tags.assign(n, 0);
        for (std::size_t k = 0; k < inst.subs.size(); ++k) {
            int tag = k == 0 ? kExteriorTag : static_cast<int>(k);
            std::size_t span = (inst.subs[k].second + n - inst.subs[k].first) % n;
            for (std::size_t e = 0; e < span; ++e) g.tags[(inst.subs[k].first + e) % n] = tag;
        }
        auto res = fill_gap(g);
        INFO("seed=", seed, " reason=", res.reason);
        REQUIRE(res.filled);
        double gap_area = signed_area(g.poly);
        CHECK(std::abs(total_area(res) - gap_area) <= 1e-8 * gap_area);
        for (const auto& p : res.pieces) CHECK(p.owner >= 1);
    }
}

TEST_CASE("extract_gaps: hole enclosed by four bars") {
    std::vector<Unit> units{make_rect("S", 0, 0, 3, 1), make_rect("E", 2, 0, 3, 3),
                            make_rect("N", 0, 2, 3, 3), make_rect("W", 0, 0, 1, 3)};
    RefinedTiling rt = refine(units, {}, 1e-9);
    auto assign = assign_pieces(units, rt);
    auto gaps = extract_gaps(rt, assign);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].area == doctest::Approx(1.0));
    CHECK(gaps[0].holes.empty());
    CHECK(gaps[0].adjacent_units == std::vector<int>{0, 1, 2, 3});

    auto res = fill_gap(gaps[0].boundary);
    REQUIRE(res.filled);
    CHECK(total_area(res) == doctest::Approx(1.0));
}

TEST_CASE("extract_gaps: hole of a single unit is a uniform gap") {
    Unit u = make_rect("A", 0, 0, 3, 3);
    u.holes.push_back(Ring{{{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
    RefinedTiling rt = refine({u}, {}, 1e-9);
    auto assign = assign_pieces({u}, rt);
    auto gaps = extract_gaps(rt, assign);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].area == doctest::Approx(1.0));
    auto subs = gap_subs(gaps[0].boundary);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].owner == 0);
    auto res = fill_gap(gaps[0].boundary);
    REQUIRE(res.filled);
    CHECK(res.pieces.size() == 1);
    CHECK(res.pieces[0].owner == 0);
}

TEST_CASE("extract_gaps: island inside a hole makes the gap non-simply-connected") {
    Unit a = make_rect("A", 0, 0, 5, 5);
    a.holes.push_back(Ring{{{1, 1}, {4, 1}, {4, 4}, {1, 4}}});
    Unit b = make_rect("B", 2, 2, 3, 3);
    RefinedTiling rt = refine({a, b}, {}, 1e-9);
    auto assign = assign_pieces({a, b}, rt);
    auto gaps = extract_gaps(rt, assign);
    REQUIRE(gaps.size() == 1);
    REQUIRE(gaps[0].holes.size() == 1);
    CHECK(gaps[0].area == doctest::Approx(8.0));
}
