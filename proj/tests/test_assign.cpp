#include <doctest.h>

#include "tilerepair/assign.hpp"

using namespace tilerepair;

namespace {

Unit make_rect(const std::string& id, double x0, double y0, double x1, double y1) {
    Unit u;
    u.id = id;
    u.outers.push_back(Ring{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
    return u;
}

double unit_area(const AssignResult& res, const RefinedTiling& rt, int u) {
    double a = 0;
    for (std::size_t f = 0; f < rt.faces.size(); ++f)
        if (res.owner[f] == u) a += rt.faces[f].area;
    return a;
}

}  // namespace

TEST_CASE("clean tiling: identity assignment") {
    std::vector<Unit> units{make_rect("A", 0, 0, 1, 1), make_rect("B", 1, 0, 2, 1)};
    RefinedTiling rt = refine(units, {}, 1e-9);
    auto res = assign_pieces(units, rt);
    CHECK(res.disconnected.empty());
    CHECK(unit_area(res, rt, 0) == doctest::Approx(1.0));
    CHECK(unit_area(res, rt, 1) == doctest::Approx(1.0));
}

TEST_CASE("two overlapping squares: lens tie-breaks to the smaller id") {
    std::vector<Unit> units{make_rect("A", 0, 0, 2, 2), make_rect("B", 1, 1, 3, 3)};
    RefinedTiling rt = refine(units, {}, 1e-9);
    auto res = assign_pieces(units, rt);
    CHECK(res.disconnected.empty());
    // the lens [1,2]^2 shares perimeter 2 with each remainder; tie -> A
    CHECK(unit_area(res, rt, 0) == doctest::Approx(4.0));
    CHECK(unit_area(res, rt, 1) == doctest::Approx(3.0));
    for (std::size_t f = 0; f < rt.faces.size(); ++f) CHECK(res.owner[f] >= 0);
}

TEST_CASE("connectivity beats shared perimeter") {
    // thin bar P cut in half by B; the cut piece shares more perimeter
    // with B but must go to P to reconnect it
    std::vector<Unit> units{make_rect("B", 1, 0, 2, 3), make_rect("P", 0, 0, 3, 0.2)};
    RefinedTiling rt = refine(units, {}, 1e-9);
    auto res = assign_pieces(units, rt);
    CHECK(res.disconnected.empty());
    CHECK(unit_area(res, rt, 1) == doctest::Approx(0.6));  // P whole bar
    CHECK(unit_area(res, rt, 0) == doctest::Approx(3.0 - 0.2));
}

TEST_CASE("unresolvable cross: earlier id reconnects, other reported") {
    std::vector<Unit> units{make_rect("A", 0, 1, 3, 2), make_rect("B", 1, 0, 2, 3)};
    RefinedTiling rt = refine(units, {}, 1e-9);
    auto res = assign_pieces(units, rt);
    REQUIRE(res.disconnected.size() == 1);
    CHECK(res.disconnected[0] == "B");
    CHECK(unit_area(res, rt, 0) == doctest::Approx(3.0));  // A gets the center
    CHECK(unit_area(res, rt, 1) == doctest::Approx(2.0));
}

TEST_CASE("three-way overlap: everything assigned exactly once") {
    std::vector<Unit> units{make_rect("A", 0, 0, 2, 2), make_rect("B", 1, 0, 3, 2),
                            make_rect("C", 0.5, 1, 2.5, 3)};
    RefinedTiling rt = refine(units, {}, 1e-9);
    std::size_t max_order = 0;
    for (const auto& s : rt.owner_sets) max_order = std::max(max_order, s.size());
    REQUIRE(max_order == 3);
    auto res = assign_pieces(units, rt);
    double total = 0;
    for (std::size_t f = 0; f < rt.faces.size(); ++f) {
        REQUIRE(res.owner[f] >= 0);
        // assigned owner is always a member of the piece's owner set
        const auto& own = rt.owner_sets[f];
        CHECK(std::find(own.begin(), own.end(), res.owner[f]) != own.end());
        total += rt.faces[f].area;
    }
    // union area: 4 + 4 + 4 minus pairwise overlaps plus triple overlap
    double a0 = unit_area(res, rt, 0), a1 = unit_area(res, rt, 1), a2 = unit_area(res, rt, 2);
    CHECK(a0 + a1 + a2 == doctest::Approx(total));
    // each unit keeps at least its exclusive area
    for (int u = 0; u < 3; ++u) {
        double excl = 0;
        for (std::size_t f = 0; f < rt.faces.size(); ++f)
            if (rt.owner_sets[f].size() == 1 && rt.owner_sets[f][0] == u)
                excl += rt.faces[f].area;
        CHECK(unit_area(res, rt, u) >= excl - 1e-12);
    }
    // determinism
    auto res2 = assign_pieces(units, rt);
    CHECK(res2.owner == res.owner);
}

TEST_CASE("shared_perimeter on rings") {
    std::vector<Ring> a{Ring{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}};
    std::vector<Ring> b{Ring{{{1, 0}, {2, 0}, {2, 1}, {1, 1}}}};
    CHECK(shared_perimeter(a, b) == doctest::Approx(1.0));
    std::vector<Ring> c{Ring{{{1, 1}, {2, 1}, {2, 2}, {1, 2}}}};
    CHECK(shared_perimeter(a, c) == doctest::Approx(0.0));
    std::vector<Ring> big{Ring{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}}};
    std::vector<Ring> lens{Ring{{{1, 1}, {2, 1}, {2, 2}, {1, 2}}}};
    CHECK(shared_perimeter(big, lens) == doctest::Approx(2.0));
}
