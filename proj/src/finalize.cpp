#include "tilerepair/finalize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tilerepair {

namespace {

double edge_length(const VertexPool& pool, const std::array<VId, 2>& e) {
    return dist(pool[e[0]], pool[e[1]]);
}

// unit index per face of a refined clean tiling (-1 for gap faces)
std::vector<int> face_owners(const RefinedTiling& rt) {
    std::vector<int> owner(rt.faces.size(), -1);
    for (std::size_t f = 0; f < rt.faces.size(); ++f)
        if (!rt.owner_sets[f].empty()) owner[f] = rt.owner_sets[f][0];
    return owner;
}

// rebuild unit geometry from its faces plus extra rings
void set_unit_geometry(Unit& u, const RefinedTiling& rt, const std::vector<int>& faces,
                       const std::vector<Ring>& extra_outers) {
    std::vector<Ring> outers = extra_outers, holes;
    for (int f : faces) {
        const Face& face = rt.faces[static_cast<std::size_t>(f)];
        outers.push_back(loop_ring(rt.pool, face.outer));
        for (const auto& h : face.holes) holes.push_back(loop_ring(rt.pool, h));
    }
    MergedRegion merged = merge_rings(outers, holes);
    u.outers = std::move(merged.outers);
    u.holes = std::move(merged.holes);
}

// connected components (as face index lists) of one unit's faces
std::vector<std::vector<int>> components_of(const std::vector<int>& faces, const EdgeFaceMap& efm,
                                            const RefinedTiling& rt,
                                            const std::vector<int>& owner, int unit) {
    std::map<int, int> parent;
    for (int f : faces) parent[f] = f;
    std::function<int(int)> find = [&](int f) { return parent[f] == f ? f : parent[f] = find(parent[f]); };
    for (int f : faces)
        for (const auto& e : face_boundary_edges(rt.faces[static_cast<std::size_t>(f)])) {
            auto it = efm.find(e);
            if (it == efm.end()) continue;
            for (int g : it->second)
                if (g != f && owner[static_cast<std::size_t>(g)] == unit) parent[find(f)] = find(g);
        }
    std::map<int, std::vector<int>> groups;
    for (int f : faces) groups[find(f)].push_back(f);
    std::vector<std::vector<int>> out;
    for (auto& [root, fs] : groups) out.push_back(std::move(fs));
    return out;
}

double faces_area(const RefinedTiling& rt, const std::vector<int>& faces) {
    double a = 0;
    for (int f : faces) a += rt.faces[static_cast<std::size_t>(f)].area;
    return a;
}

}  // namespace

std::vector<Unit> reconnect_orphans(std::vector<Unit> units, const OrphanPolicy& policy,
                                    std::vector<std::string>* residual) {
    if (units.empty()) return units;
    RefinedTiling rt = refine(units, {}, default_snap_tol(units));
    EdgeFaceMap efm = edge_face_map(rt.faces);
    std::vector<int> owner = face_owners(rt);

    auto id_less = [&](int a, int b) {
        return units[static_cast<std::size_t>(a)].id < units[static_cast<std::size_t>(b)].id;
    };

    std::set<int> stuck;  // component roots that found no neighbor
    bool changed = true;
    while (changed) {
        changed = false;
        // candidate orphans across all units, smallest area first
        struct Orphan {
            double area;
            int unit;
            std::vector<int> faces;
        };
        std::vector<Orphan> orphans;
        for (std::size_t u = 0; u < units.size(); ++u) {
            std::vector<int> faces;
            for (std::size_t f = 0; f < rt.faces.size(); ++f)
                if (owner[f] == static_cast<int>(u)) faces.push_back(static_cast<int>(f));
            auto comps = components_of(faces, efm, rt, owner, static_cast<int>(u));
            if (comps.size() < 2) continue;
            double largest = 0;
            for (const auto& c : comps) largest = std::max(largest, faces_area(rt, c));
            for (auto& c : comps) {
                double a = faces_area(rt, c);
                if (a < policy.ratio_threshold * largest && !stuck.count(c.front()))
                    orphans.push_back({a, static_cast<int>(u), std::move(c)});
            }
        }
        std::sort(orphans.begin(), orphans.end(), [&](const Orphan& a, const Orphan& b) {
            if (a.area != b.area) return a.area < b.area;
            return a.faces.front() < b.faces.front();
        });
        for (const Orphan& o : orphans) {
            // neighbor unit with the largest shared perimeter
            std::map<int, double> shared;
            std::set<int> members(o.faces.begin(), o.faces.end());
            for (int f : o.faces)
                for (const auto& e : face_boundary_edges(rt.faces[static_cast<std::size_t>(f)])) {
                    auto it = efm.find(e);
                    if (it == efm.end()) continue;
                    for (int g : it->second) {
                        int v = owner[static_cast<std::size_t>(g)];
                        if (v >= 0 && v != o.unit && !members.count(g))
                            shared[v] += edge_length(rt.pool, e);
                    }
                }
            int best = -1;
            double best_len = 0;
            for (const auto& [v, len] : shared)
                if (best < 0 || len > best_len || (len == best_len && id_less(v, best))) {
                    best = v;
                    best_len = len;
                }
            if (best < 0) {
                stuck.insert(o.faces.front());
                continue;
            }
            for (int f : o.faces) owner[static_cast<std::size_t>(f)] = best;
            changed = true;
            break;  // recompute components from scratch
        }
    }

    for (std::size_t u = 0; u < units.size(); ++u) {
        std::vector<int> faces;
        for (std::size_t f = 0; f < rt.faces.size(); ++f)
            if (owner[f] == static_cast<int>(u)) faces.push_back(static_cast<int>(f));
        set_unit_geometry(units[u], rt, faces, {});
        if (residual && components_of(faces, efm, rt, owner, static_cast<int>(u)).size() > 1)
            residual->push_back(units[u].id);
    }
    return units;
}

namespace {

struct DiskRegion {
    Ring ring;     // CCW convex boundary (disk polygon or merged hull)
    Point center;  // queen contact point
};

Ring disk_polygon(Point c, double r, int segments) {
    Ring ring;
    for (int k = 0; k < segments; ++k) {
        double a = 2.0 * M_PI * k / segments;
        ring.pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    return ring;
}

// one conversion sweep; returns true if any contact was converted
bool queen_pass(std::vector<Unit>& units, const QueenConversion& conv,
                std::vector<std::string>* warnings) {
    RefinedTiling rt = refine(units, {}, default_snap_tol(units));
    EdgeFaceMap efm = edge_face_map(rt.faces);
    std::vector<int> owner = face_owners(rt);

    // shared edges per unit pair
    std::map<std::pair<int, int>, std::vector<std::array<VId, 2>>> pair_edges;
    for (const auto& [e, fs] : efm) {
        std::set<int> us;
        for (int f : fs)
            if (owner[static_cast<std::size_t>(f)] >= 0) us.insert(owner[static_cast<std::size_t>(f)]);
        if (us.size() == 2) pair_edges[{*us.begin(), *std::next(us.begin())}].push_back(e);
    }

    // split each pair's shared edges into connected chains; short ones convert
    struct ShortChain {
        Point center;
        double radius;
    };
    std::vector<ShortChain> disks;
    for (const auto& [pr, edges] : pair_edges) {
        std::map<VId, std::vector<std::size_t>> at;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            at[edges[k][0]].push_back(k);
            at[edges[k][1]].push_back(k);
        }
        std::vector<char> used(edges.size(), 0);
        for (std::size_t k0 = 0; k0 < edges.size(); ++k0) {
            if (used[k0]) continue;
            // collect the chain containing edge k0
            std::vector<std::size_t> chain{k0};
            used[k0] = 1;
            for (std::size_t q = 0; q < chain.size(); ++q)
                for (VId v : edges[chain[q]])
                    for (std::size_t k : at[v])
                        if (!used[k]) {
                            used[k] = 1;
                            chain.push_back(k);
                        }
            double len = 0;
            for (std::size_t k : chain) len += edge_length(rt.pool, edges[k]);
            if (len <= 0 || len >= conv.length_threshold) continue;
            // order the chain from one endpoint to find its midpoint
            std::map<VId, int> deg;
            for (std::size_t k : chain) {
                deg[edges[k][0]]++;
                deg[edges[k][1]]++;
            }
            VId start = edges[chain[0]][0];
            for (const auto& [v, d] : deg)
                if (d == 1) {
                    start = v;
                    break;
                }
            std::set<std::size_t> left(chain.begin(), chain.end());
            VId cur = start;
            double walked = 0;
            Point center = rt.pool[start];
            while (!left.empty()) {
                std::size_t next = *left.begin();
                bool found = false;
                for (std::size_t k : left)
                    if (edges[k][0] == cur || edges[k][1] == cur) {
                        next = k;
                        found = true;
                        break;
                    }
                if (!found) break;
                left.erase(next);
                VId to = edges[next][0] == cur ? edges[next][1] : edges[next][0];
                double L = dist(rt.pool[cur], rt.pool[to]);
                if (walked + L >= len / 2 && L > 0) {
                    double t = (len / 2 - walked) / L;
                    center = rt.pool[cur] + t * (rt.pool[to] - rt.pool[cur]);
                    break;
                }
                walked += L;
                cur = to;
                center = rt.pool[cur];
            }
            disks.push_back({center, conv.disk_radius_factor * len});
        }
    }
    if (disks.empty()) return false;

    // merge overlapping disks into convex hulls
    std::vector<std::size_t> parent(disks.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t k) {
        return parent[k] == k ? k : parent[k] = find(parent[k]);
    };
    for (std::size_t a = 0; a < disks.size(); ++a)
        for (std::size_t b = a + 1; b < disks.size(); ++b)
            if (dist(disks[a].center, disks[b].center) <= disks[a].radius + disks[b].radius)
                parent[find(a)] = find(b);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < disks.size(); ++k) groups[find(k)].push_back(k);

    std::vector<DiskRegion> regions;
    for (const auto& [root, members] : groups) {
        DiskRegion reg;
        if (members.size() == 1) {
            reg.ring = disk_polygon(disks[members[0]].center, disks[members[0]].radius,
                                    conv.circle_segments);
            reg.center = disks[members[0]].center;
        } else {
            std::vector<Point> pts;
            for (std::size_t k : members) {
                Ring d = disk_polygon(disks[k].center, disks[k].radius, conv.circle_segments);
                pts.insert(pts.end(), d.pts.begin(), d.pts.end());
            }
            for (std::size_t idx : convex_hull(pts)) reg.ring.pts.push_back(pts[idx]);
            reg.center = centroid(reg.ring);
        }
        // the region must not swallow a whole unit; parts of it may stick out
        // of the tiling (map edge) -- those arcs just get no pie piece
        bool engulfs = false;
        std::set<int> touched;
        for (std::size_t k = 0; k < reg.ring.size(); ++k) {
            for (Point p : {reg.ring.at(k), 0.5 * (reg.ring.at(k) + reg.ring.at(k + 1))}) {
                for (std::size_t u = 0; u < units.size(); ++u)
                    if (unit_contains(units[u], p)) {
                        touched.insert(static_cast<int>(u));
                        break;
                    }
            }
        }
        for (std::size_t u = 0; u < units.size() && !engulfs; ++u) {
            bool inside = !units[u].outers.empty();
            for (const Ring& o : units[u].outers)
                for (const Point& p : o.pts)
                    if (point_in_ring(p, reg.ring) < 0) inside = false;
            if (inside) engulfs = true;
        }
        if (engulfs) {
            if (warnings)
                warnings->push_back("skipped a queen conversion near (" +
                                    std::to_string(reg.center.x) + ", " +
                                    std::to_string(reg.center.y) + "): disk engulfs a unit");
            continue;
        }
        if (touched.size() > 8 && warnings)
            warnings->push_back("queen conversion hull intersects " +
                                std::to_string(touched.size()) + " units (suspicious)");
        regions.push_back(std::move(reg));
    }
    if (regions.empty()) return false;

    // re-noded arrangement including the region boundaries
    std::vector<Ring> extras;
    for (const DiskRegion& r : regions) extras.push_back(r.ring);
    double snap_tol = default_snap_tol(units);
    RefinedTiling rt2 = refine(units, extras, snap_tol);
    std::vector<int> owner2 = face_owners(rt2);

    // classify faces by region membership of their representative point
    std::vector<int> face_region(rt2.faces.size(), -1);
    for (std::size_t f = 0; f < rt2.faces.size(); ++f)
        for (std::size_t r = 0; r < regions.size() && face_region[f] < 0; ++r)
            if (point_in_ring(rt2.faces[f].rep, regions[r].ring) == 1)
                face_region[f] = static_cast<int>(r);

    // region arcs are the boundary edges of each region's face set, so the
    // pies built from them exactly complement the kept faces.  A distance
    // test against the input ring would misclassify sliver faces the snap
    // tolerance creates along the boundary.  Each arc belongs to the unit
    // owning the face just inside the region; arcs over unowned faces (map
    // edge) carry unit -1 and get no pie.
    struct ArcEdge {
        std::array<VId, 2> e;
        double ang;
        int unit;
    };
    std::vector<std::vector<ArcEdge>> region_arcs(regions.size());
    {
        EdgeFaceMap efm2 = edge_face_map(rt2.faces);
        // degenerate micro-faces vanish in polygonize and leave unpaired edges
        // deep inside a region; only unpaired edges on the region ring itself
        // (map edge) are real boundary
        auto on_ring = [&](const Ring& ring, Point a, Point b) {
            double eps = 8.0 * std::max(snap_tol, 1e-15);
            Point m = 0.5 * (a + b);
            for (std::size_t k = 0; k < ring.size(); ++k) {
                Segment s{ring.at(k), ring.at(k + 1)};
                if (point_segment_distance(a, s) <= eps && point_segment_distance(b, s) <= eps &&
                    point_segment_distance(m, s) <= eps)
                    return true;
            }
            return false;
        };
        for (const auto& [e, fs] : efm2) {
            for (int fi : fs) {
                int r = face_region[static_cast<std::size_t>(fi)];
                if (r < 0) continue;
                bool interior = false;
                for (int fo : fs)
                    if (fo != fi && face_region[static_cast<std::size_t>(fo)] == r)
                        interior = true;
                if (interior) continue;
                if (fs.size() == 1 &&
                    !on_ring(regions[static_cast<std::size_t>(r)].ring, rt2.pool[e[0]],
                             rt2.pool[e[1]]))
                    continue;
                Point m = 0.5 * (rt2.pool[e[0]] + rt2.pool[e[1]]);
                double ang = std::atan2(m.y - regions[static_cast<std::size_t>(r)].center.y,
                                        m.x - regions[static_cast<std::size_t>(r)].center.x);
                region_arcs[static_cast<std::size_t>(r)].push_back(
                    {e, ang, owner2[static_cast<std::size_t>(fi)]});
            }
        }
        for (auto& arcs : region_arcs)
            std::sort(arcs.begin(), arcs.end(),
                      [](const ArcEdge& a, const ArcEdge& b) { return a.ang < b.ang; });
    }
    // assemble: faces outside regions keep their unit; pies replace the insides
    std::vector<std::vector<Ring>> keep_outers(units.size()), keep_holes(units.size());
    for (std::size_t f = 0; f < rt2.faces.size(); ++f) {
        int u = owner2[f];
        if (u < 0) continue;
        if (face_region[f] >= 0) continue;  // replaced by pies
        keep_outers[static_cast<std::size_t>(u)].push_back(loop_ring(rt2.pool, rt2.faces[f].outer));
        for (const auto& h : rt2.faces[f].holes)
            keep_holes[static_cast<std::size_t>(u)].push_back(loop_ring(rt2.pool, h));
    }
    bool any = false;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        auto& arcs = region_arcs[r];
        std::size_t n = arcs.size();
        if (n == 0) continue;
        // orient each edge CCW around the center
        auto ccw = [&](const ArcEdge& ae) {
            Point a = rt2.pool[ae.e[0]], b = rt2.pool[ae.e[1]];
            return cross(a - regions[r].center, b - a) > 0 ? std::array<VId, 2>{ae.e[0], ae.e[1]}
                                                           : std::array<VId, 2>{ae.e[1], ae.e[0]};
        };
        // cyclic runs of edges owned by the same unit -> one pie piece each
        std::size_t first = 0;
        while (first < n && arcs[first].unit == arcs[(first + n - 1) % n].unit) ++first;
        if (first == n) {
            if (arcs[0].unit < 0) continue;  // fully outside the tiling
            // whole boundary inside one unit: nothing to split, keep the region
            Ring whole;
            for (const ArcEdge& ae : arcs) whole.pts.push_back(rt2.pool[ccw(ae)[0]]);
            keep_outers[static_cast<std::size_t>(arcs[0].unit)].push_back(std::move(whole));
            any = true;
            continue;
        }
        std::size_t k = first;
        do {
            int u = arcs[k].unit;
            Ring pie;
            std::size_t j = k;
            while (arcs[j].unit == u) {
                pie.pts.push_back(rt2.pool[ccw(arcs[j])[0]]);
                j = (j + 1) % n;
                if (j == first) break;
            }
            // unowned runs (outside the map) leave a bite with no pie piece
            if (u >= 0) {
                pie.pts.push_back(rt2.pool[ccw(arcs[(j + n - 1) % n])[1]]);
                pie.pts.push_back(regions[r].center);
                keep_outers[static_cast<std::size_t>(u)].push_back(std::move(pie));
            }
            k = j;
        } while (k != first);
        any = true;
    }
    if (!any) return false;

    for (std::size_t u = 0; u < units.size(); ++u) {
        MergedRegion merged = merge_rings(keep_outers[u], keep_holes[u]);
        units[u].outers = std::move(merged.outers);
        units[u].holes = std::move(merged.holes);
    }
    return true;
}

}  // namespace

std::vector<Unit> rook_to_queen(std::vector<Unit> units, const QueenConversion& conv,
                                std::vector<std::string>* warnings) {
    if (conv.length_threshold <= 0) return units;
    for (int pass = 0; pass < 8; ++pass)
        if (!queen_pass(units, conv, warnings)) return units;
    if (warnings) warnings->push_back("rook-to-queen conversion did not stabilize in 8 passes");
    return units;
}

}  // namespace tilerepair
