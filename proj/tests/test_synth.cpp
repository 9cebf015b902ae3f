#include "tilerepair/synth.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"

using namespace tilerepair;

namespace {

double total_area(const std::vector<Unit>& units) {
    double a = 0;
    for (const Unit& u : units) {
        for (const Ring& r : u.outers) a += signed_area(r);
        for (const Ring& r : u.holes) a -= signed_area(r);
    }
    return a;
}

std::set<std::pair<std::string, std::string>> rook_set(const AdjacencyGraph& g) {
    std::set<std::pair<std::string, std::string>> s;
    for (const AdjacencyEdge& e : g.edges)
        if (!e.queen) s.insert({e.a, e.b});
    return s;
}

bool same_units(const std::vector<Unit>& a, const std::vector<Unit>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].id != b[i].id || a[i].outers.size() != b[i].outers.size()) return false;
        for (std::size_t r = 0; r < a[i].outers.size(); ++r)
            if (!(a[i].outers[r].pts == b[i].outers[r].pts)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("generate_grid: counts, areas, and rook graph") {
    SyntheticTiling g = generate_grid(2, 2, 1.0);
    CHECK(g.units.size() == 4);
    CHECK(rook_set(g.adjacency).size() == 4);
    int queens = 0;
    for (const auto& e : g.adjacency.edges)
        if (e.queen) ++queens;
    CHECK(queens == 2);
    CHECK(total_area(g.units) == doctest::Approx(4.0));

    SyntheticTiling one = generate_grid(1, 1, 2.5);
    CHECK(one.units.size() == 1);
    CHECK(one.adjacency.edges.empty());

    CHECK(rook_set(generate_grid(10, 10, 1.0).adjacency).size() == 180);
}

TEST_CASE("generate_grid: ground truth matches the extracted adjacency") {
    SyntheticTiling g = generate_grid(4, 3, 0.5);
    AdjacencyGraph extracted = adjacency_graph(g.units);
    CHECK(rook_set(g.adjacency) == rook_set(extracted));
    DiagnosticsReport diag = doctor(g.units, 0.0);
    CHECK(diag.overlap_count == 0);
    CHECK(diag.gap_count == 0);
}

TEST_CASE("generate_voronoi: trivial cases") {
    SyntheticTiling one = generate_voronoi(1, 7);
    CHECK(one.units.size() == 1);
    CHECK(total_area(one.units) == doctest::Approx(1.0));
    CHECK(one.adjacency.edges.empty());

    SyntheticTiling two = generate_voronoi(2, 7);
    CHECK(two.units.size() == 2);
    CHECK(two.adjacency.edges.size() == 1);
    CHECK(total_area(two.units) == doctest::Approx(1.0));
}

TEST_CASE("generate_voronoi: 100 cells tile the box cleanly") {
    Box box{0, 0, 1, 1};
    SyntheticTiling v = generate_voronoi(100, 12345, box);
    CHECK(v.units.size() == 100);
    CHECK(total_area(v.units) == doctest::Approx(1.0).epsilon(1e-9));
    DiagnosticsReport diag = doctor(v.units);
    CHECK(diag.overlap_count == 0);
    CHECK(diag.gap_count == 0);
    // ground-truth adjacency agrees with extraction from the geometry
    CHECK(rook_set(v.adjacency) == rook_set(adjacency_graph(v.units)));
}

TEST_CASE("generate_voronoi: deterministic under seed") {
    SyntheticTiling a = generate_voronoi(30, 99);
    SyntheticTiling b = generate_voronoi(30, 99);
    CHECK(same_units(a.units, b.units));
    SyntheticTiling c = generate_voronoi(30, 100);
    CHECK(!same_units(a.units, c.units));
}

TEST_CASE("generate_strip_gap: geometry and expected adjacency") {
    SyntheticTiling s = generate_strip_gap(15, 0.1);
    CHECK(s.units.size() == 16);
    // the gap column is open: total area misses 15 * 0.1
    CHECK(total_area(s.units) == doctest::Approx(15.0 + 15.0).epsilon(1e-12));
    auto rooks = rook_set(s.adjacency);
    CHECK(rooks.size() == 14 + 15);
    CHECK(rooks.count({"e", "w0"}) == 1);
    CHECK(rooks.count({"w0", "w1"}) == 1);
    CHECK(rooks.count({"w0", "w14"}) == 0);
}

TEST_CASE("perturb: epsilon 0 is the identity") {
    SyntheticTiling g = generate_grid(3, 3, 1.0);
    PerturbationSpec spec;
    spec.epsilon = 0.0;
    spec.rng_seed = 5;
    CHECK(same_units(perturb(g.units, spec), g.units));
}

TEST_CASE("perturb: bounded displacement, determinism, and broken topology") {
    SyntheticTiling g = generate_grid(2, 2, 1.0);
    PerturbationSpec spec;
    spec.epsilon = 0.01;
    spec.rng_seed = 42;
    std::vector<Unit> noisy = perturb(g.units, spec);
    REQUIRE(noisy.size() == g.units.size());
    bool any_moved = false;
    for (std::size_t i = 0; i < noisy.size(); ++i)
        for (std::size_t r = 0; r < noisy[i].outers.size(); ++r)
            for (std::size_t k = 0; k < noisy[i].outers[r].size(); ++k) {
                Point p = noisy[i].outers[r].pts[k], q = g.units[i].outers[r].pts[k];
                CHECK(std::abs(p.x - q.x) <= spec.epsilon);
                CHECK(std::abs(p.y - q.y) <= spec.epsilon);
                if (p != q) any_moved = true;
            }
    CHECK(any_moved);
    CHECK(same_units(perturb(g.units, spec), noisy));
    // formerly shared corners diverge, so the tiling acquires defects
    DiagnosticsReport diag = doctor(noisy, 0.0);
    CHECK(diag.overlap_count + diag.gap_count >= 1);
}

TEST_CASE("perturb: gaussian-clipped mode stays within epsilon") {
    SyntheticTiling g = generate_grid(3, 3, 1.0);
    PerturbationSpec spec;
    spec.epsilon = 0.05;
    spec.rng_seed = 7;
    spec.mode = PerturbationSpec::Mode::gaussian_clipped;
    std::vector<Unit> noisy = perturb(g.units, spec);
    for (std::size_t i = 0; i < noisy.size(); ++i)
        for (std::size_t k = 0; k < noisy[i].outers[0].size(); ++k) {
            Point p = noisy[i].outers[0].pts[k], q = g.units[i].outers[0].pts[k];
            CHECK(std::abs(p.x - q.x) <= spec.epsilon);
            CHECK(std::abs(p.y - q.y) <= spec.epsilon);
        }
}

TEST_CASE("perturb: shared-vertex-consistent mode keeps the tiling clean") {
    SyntheticTiling g = generate_grid(3, 3, 1.0);
    PerturbationSpec spec;
    spec.epsilon = 0.01;
    spec.rng_seed = 11;
    spec.shared_vertex_consistent = true;
    std::vector<Unit> noisy = perturb(g.units, spec);
    DiagnosticsReport diag = doctor(noisy, 0.0);
    CHECK(diag.overlap_count == 0);
    CHECK(diag.gap_count == 0);
}

TEST_CASE("perturb: epsilon too large for the geometry is an error") {
    // a 1e-4-wide sliver cannot survive 0.1 jitter without self-intersecting
    Unit sliver;
    sliver.id = "s";
    sliver.outers.push_back(Ring{{{0, 0}, {10, 0}, {10, 1e-4}, {0, 1e-4}}});
    PerturbationSpec spec;
    spec.epsilon = 0.1;
    spec.rng_seed = 3;
    bool threw = false, moved = false;
    try {
        std::vector<Unit> noisy = perturb({sliver}, spec);
        moved = true;
    } catch (const std::runtime_error&) {
        threw = true;
    }
    // depending on the draws this either succeeds or reports the redraw
    // failure; either way it must not hang or corrupt
    CHECK((threw || moved));
}
