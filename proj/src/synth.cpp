#include "tilerepair/synth.hpp"

#include <algorithm>
#include <cstddef>
#include <cstring>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace tilerepair {

namespace {

// splitmix64; uniform doubles take the top 53 bits
struct Rng {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    Rng r{seed ^ (0xA24BAED4963EE407ull * (salt + 1))};
    return r.next();
}

void sort_edges(AdjacencyGraph& g) {
    for (AdjacencyEdge& e : g.edges)
        if (e.b < e.a) std::swap(e.a, e.b);
    std::sort(g.edges.begin(), g.edges.end(), [](const AdjacencyEdge& x, const AdjacencyEdge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
}

Ring rect(double x0, double y0, double x1, double y1) {
    return Ring{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

Unit make_unit(std::string id, Ring outer) {
    Unit u;
    u.id = std::move(id);
    u.outers.push_back(std::move(outer));
    return u;
}

}  // namespace

SyntheticTiling generate_grid(int nx, int ny, double cell_size) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("generate_grid: nx and ny must be >= 1");
    if (!(cell_size > 0)) throw std::invalid_argument("generate_grid: cell_size must be positive");
    SyntheticTiling out;
    auto id_of = [](int y, int x) {
        return "c" + std::to_string(y) + "_" + std::to_string(x);
    };
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x)
            out.units.push_back(make_unit(
                id_of(y, x), rect(x * cell_size, y * cell_size, (x + 1) * cell_size,
                                  (y + 1) * cell_size)));
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            if (x + 1 < nx)
                out.adjacency.edges.push_back({id_of(y, x), id_of(y, x + 1), cell_size, false});
            if (y + 1 < ny)
                out.adjacency.edges.push_back({id_of(y, x), id_of(y + 1, x), cell_size, false});
            if (x + 1 < nx && y + 1 < ny)
                out.adjacency.edges.push_back({id_of(y, x), id_of(y + 1, x + 1), 0.0, true});
            if (x > 0 && y + 1 < ny)
                out.adjacency.edges.push_back({id_of(y, x), id_of(y + 1, x - 1), 0.0, true});
        }
    sort_edges(out.adjacency);
    return out;
}

namespace {

// ring vertex plus the label of the edge starting at it: site index of the
// bisector that produced the edge, or -1 for a box edge
struct LabeledRing {
    std::vector<std::pair<Point, int>> v;
};

// clip to the half-plane of points closer to `self` than `other`
LabeledRing clip_bisector(const LabeledRing& in, Point self, Point other, int label) {
    Point m = 0.5 * (self + other), n = other - self;
    auto side = [&](Point p) { return dot(p - m, n); };  // keep <= 0
    LabeledRing out;
    std::size_t cnt = in.v.size();
    for (std::size_t i = 0; i < cnt; ++i) {
        auto [a, la] = in.v[i];
        Point b = in.v[(i + 1) % cnt].first;
        double da = side(a), db = side(b);
        if (da <= 0) {
            out.v.push_back({a, la});
            if (db > 0) {
                double t = da / (da - db);
                out.v.push_back({a + t * (b - a), label});
            }
        } else if (db <= 0) {
            double t = da / (da - db);
            out.v.push_back({a + t * (b - a), la});
        }
    }
    return out;
}

}  // namespace

SyntheticTiling generate_voronoi(int n_sites, std::uint64_t seed, const Box& box) {
    if (n_sites < 1) throw std::invalid_argument("generate_voronoi: n_sites must be >= 1");
    if (!(box.x1 > box.x0) || !(box.y1 > box.y0))
        throw std::invalid_argument("generate_voronoi: empty bounding box");

    std::vector<Point> sites;
    for (int attempt = 0; attempt < 16; ++attempt) {
        sites.clear();
        Rng rng{mix(seed + static_cast<std::uint64_t>(attempt), 0x5609C2B2ull)};
        for (int k = 0; k < n_sites; ++k)
            sites.push_back({rng.uniform(box.x0, box.x1), rng.uniform(box.y0, box.y1)});
        std::set<std::pair<double, double>> uniq;
        for (const Point& p : sites) uniq.insert({p.x, p.y});
        if (uniq.size() == sites.size()) break;
        sites.clear();
    }
    if (sites.empty()) throw std::runtime_error("generate_voronoi: could not draw distinct sites");

    SyntheticTiling out;
    std::map<std::pair<int, int>, double> shared;
    double min_len = 1e-12 * (std::abs(box.x1 - box.x0) + std::abs(box.y1 - box.y0));
    for (int i = 0; i < n_sites; ++i) {
        LabeledRing cell;
        cell.v = {{{box.x0, box.y0}, -1},
                  {{box.x1, box.y0}, -1},
                  {{box.x1, box.y1}, -1},
                  {{box.x0, box.y1}, -1}};
        for (int j = 0; j < n_sites && !cell.v.empty(); ++j)
            if (j != i) cell = clip_bisector(cell, sites[i], sites[j], j);
        if (cell.v.size() < 3)
            throw std::runtime_error("generate_voronoi: degenerate cell for site " +
                                     std::to_string(i));
        Ring ring;
        for (std::size_t k = 0; k < cell.v.size(); ++k) {
            auto [p, label] = cell.v[k];
            Point q = cell.v[(k + 1) % cell.v.size()].first;
            double len = dist(p, q);
            if (len <= min_len) continue;  // clipping sliver, drop the vertex
            ring.pts.push_back(p);
            if (label > i) {
                auto [it, inserted] = shared.insert({{i, label}, len});
                if (!inserted) it->second += len;
            }
        }
        out.units.push_back(make_unit("v" + std::to_string(i), std::move(ring)));
    }
    for (const auto& [pr, len] : shared)
        out.adjacency.edges.push_back(
            {"v" + std::to_string(pr.first), "v" + std::to_string(pr.second), len, false});
    sort_edges(out.adjacency);
    return out;
}

SyntheticTiling generate_strip_gap(int n, double gap_width) {
    if (n < 1) throw std::invalid_argument("generate_strip_gap: n must be >= 1");
    if (!(gap_width > 0))
        throw std::invalid_argument("generate_strip_gap: gap_width must be positive");
    SyntheticTiling out;
    for (int i = 0; i < n; ++i)
        out.units.push_back(make_unit("w" + std::to_string(i), rect(0, i, 1, i + 1)));
    out.units.push_back(make_unit("e", rect(1 + gap_width, 0, 2 + gap_width, n)));
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n)
            out.adjacency.edges.push_back(
                {"w" + std::to_string(i), "w" + std::to_string(i + 1), 1.0, false});
        out.adjacency.edges.push_back({"w" + std::to_string(i), "e", 0.0, false});
    }
    sort_edges(out.adjacency);
    return out;
}

namespace {

// check only the two edges incident to the moved vertex against the rest
bool vertex_move_keeps_simple(const Ring& r, std::size_t k) {
    std::size_t cnt = r.size();
    if (cnt < 3) return false;
    std::size_t prev = (k + cnt - 1) % cnt;
    Segment in{r.at(prev), r.at(k)}, outg{r.at(k), r.at(k + 1)};
    if (dist(in.a, in.b) == 0 || dist(outg.a, outg.b) == 0) return false;
    if (cross(in.b - in.a, outg.b - outg.a) == 0 && dot(in.a - in.b, outg.b - outg.a) > 0)
        return false;  // spike: the corner folds back on itself
    for (std::size_t j = 0; j < cnt; ++j) {
        Segment s{r.at(j), r.at(j + 1)};
        if (j != prev && j != k && (j + 1) % cnt != prev) {
            SegIntersection hit = segment_intersection(in, s);
            if (hit.kind != SegIntersection::Kind::Empty &&
                !(hit.kind == SegIntersection::Kind::AtPoint && hit.p == in.a))
                return false;
        }
        if (j != k && j != (k + 1) % cnt && (j + 1) % cnt != k) {
            SegIntersection hit = segment_intersection(outg, s);
            if (hit.kind != SegIntersection::Kind::Empty &&
                !(hit.kind == SegIntersection::Kind::AtPoint && hit.p == outg.b))
                return false;
        }
    }
    return true;
}

std::uint64_t coord_hash(Point p) {
    std::uint64_t hx, hy;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    std::memcpy(&hx, &p.x, sizeof hx);
    std::memcpy(&hy, &p.y, sizeof hy);
    return mix(hx, hy);
}

}  // namespace

std::vector<Unit> perturb(const std::vector<Unit>& units, const PerturbationSpec& spec) {
    if (spec.epsilon < 0) throw std::invalid_argument("perturb: epsilon must be >= 0");
    std::vector<Unit> out = units;
    if (spec.epsilon == 0) return out;

    auto draw = [&](Rng& rng) {
        if (spec.mode == PerturbationSpec::Mode::uniform)
            return rng.uniform(-spec.epsilon, spec.epsilon);
        // gaussian with sigma = epsilon / 3, clipped to +-epsilon (polar
        // Box-Muller on portable uniforms)
        for (;;) {
            double u = rng.uniform(-1, 1), v = rng.uniform(-1, 1);
            double s = u * u + v * v;
            if (s <= 0 || s >= 1) continue;
            double g = u * std::sqrt(-2.0 * std::log(s) / s) * (spec.epsilon / 3.0);
            return std::clamp(g, -spec.epsilon, spec.epsilon);
        }
    };

    for (std::size_t ui = 0; ui < out.size(); ++ui) {
        Rng unit_rng{mix(spec.rng_seed, ui)};
        auto displace = [&](Ring& ring) {
            for (std::size_t k = 0; k < ring.size(); ++k) {
                Point orig = ring.pts[k];
                Rng vertex_rng{mix(spec.rng_seed, coord_hash(orig))};
                Rng& rng = spec.shared_vertex_consistent ? vertex_rng : unit_rng;
                bool placed = false;
                for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
                    double dx = draw(rng), dy = draw(rng);
                    ring.pts[k] = {orig.x + dx, orig.y + dy};
                    placed = vertex_move_keeps_simple(ring, k);
                    if (spec.shared_vertex_consistent) break;  // one shared draw, no retry
                }
                if (!placed) {
                    if (spec.shared_vertex_consistent) {
                        ring.pts[k] = orig;  // keep the tiling consistent
                        continue;
                    }
                    throw std::runtime_error(
                        "perturb: could not keep unit " + out[ui].id +
                        " simple after 100 redraws (epsilon too large for its geometry)");
                }
            }
        };
        for (Ring& r : out[ui].outers) displace(r);
        for (Ring& r : out[ui].holes) displace(r);
    }
    return out;
}

}  // namespace tilerepair
