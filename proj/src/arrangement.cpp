#include "tilerepair/arrangement.hpp"

#include "tilerepair/paths.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tilerepair {

namespace {

struct BBox {
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    void grow(Point p) {
        xmin = std::min(xmin, p.x);
        ymin = std::min(ymin, p.y);
        xmax = std::max(xmax, p.x);
        ymax = std::max(ymax, p.y);
    }
    double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

BBox units_bbox(const std::vector<Unit>& units) {
    BBox bb;
    for (const Unit& u : units) {
        for (const Ring& r : u.outers)
            for (Point p : r.pts) bb.grow(p);
        for (const Ring& r : u.holes)
            for (Point p : r.pts) bb.grow(p);
    }
    return bb;
}

}  // namespace

double default_snap_tol(const std::vector<Unit>& units) {
    double d = units_bbox(units).diag();
    return d > 0 ? 1e-9 * d : 1e-12;
}

void node_edges(VertexPool& pool, std::vector<std::array<VId, 2>>& edges) {
    const double tol = pool.tol();

    auto normalize = [&] {
        for (auto& e : edges)
            if (e[0] > e[1]) std::swap(e[0], e[1]);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges.erase(std::remove_if(edges.begin(), edges.end(),
                                   [](const auto& e) { return e[0] == e[1]; }),
                    edges.end());
    };

    for (int pass = 0; pass < 16; ++pass) {
        normalize();
        // grid over segment bboxes
        BBox bb;
        for (const auto& e : edges) {
            bb.grow(pool[e[0]]);
            bb.grow(pool[e[1]]);
        }
        double cell = std::max({bb.diag() / 128.0, 8.0 * tol, 1e-300});
        std::unordered_map<std::int64_t, std::vector<int>> grid;
        auto cellkey = [&](std::int64_t ix, std::int64_t iy) {
            return ix * 73856093LL ^ iy * 19349663LL;
        };
        auto span_cells = [&](Point a, Point b, auto&& fn) {
            auto x0 = static_cast<std::int64_t>(std::floor((std::min(a.x, b.x) - tol) / cell));
            auto x1 = static_cast<std::int64_t>(std::floor((std::max(a.x, b.x) + tol) / cell));
            auto y0 = static_cast<std::int64_t>(std::floor((std::min(a.y, b.y) - tol) / cell));
            auto y1 = static_cast<std::int64_t>(std::floor((std::max(a.y, b.y) + tol) / cell));
            for (auto ix = x0; ix <= x1; ++ix)
                for (auto iy = y0; iy <= y1; ++iy) fn(cellkey(ix, iy));
        };
        for (int i = 0; i < static_cast<int>(edges.size()); ++i)
            span_cells(pool[edges[i][0]], pool[edges[i][1]],
                       [&](std::int64_t k) { grid[k].push_back(i); });

        std::vector<std::set<VId>> splits(edges.size());
        bool any = false;
        auto add_split = [&](int ei, VId v) {
            if (v == edges[static_cast<std::size_t>(ei)][0] ||
                v == edges[static_cast<std::size_t>(ei)][1])
                return;
            if (splits[static_cast<std::size_t>(ei)].insert(v).second) any = true;
        };

        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            Segment si{pool[edges[static_cast<std::size_t>(i)][0]],
                       pool[edges[static_cast<std::size_t>(i)][1]]};
            std::unordered_set<int> cand;
            span_cells(si.a, si.b, [&](std::int64_t k) {
                auto it = grid.find(k);
                if (it != grid.end())
                    for (int j : it->second)
                        if (j != i) cand.insert(j);
            });
            for (int j : cand) {
                const auto& ej = edges[static_cast<std::size_t>(j)];
                Segment sj{pool[ej[0]], pool[ej[1]]};
                // endpoints of j near the interior of i
                for (VId v : {ej[0], ej[1]})
                    if (point_segment_distance(pool[v], si) <= tol) add_split(i, v);
                if (j < i) continue;  // intersections handled once per pair
                auto ix = segment_intersection(si, sj);
                if (ix.kind == SegIntersection::Kind::AtPoint) {
                    VId v = pool.add(ix.p);
                    add_split(i, v);
                    add_split(j, v);
                } else if (ix.kind == SegIntersection::Kind::Overlap) {
                    for (Point p : {ix.sub.a, ix.sub.b}) {
                        VId v = pool.add(p);
                        add_split(i, v);
                        add_split(j, v);
                    }
                }
            }
        }

        if (!any) return;

        std::vector<std::array<VId, 2>> next;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (splits[i].empty()) {
                next.push_back(edges[i]);
                continue;
            }
            Point a = pool[edges[i][0]], b = pool[edges[i][1]];
            Point d = b - a;
            std::vector<std::pair<double, VId>> order{{0.0, edges[i][0]}};
            for (VId v : splits[i]) order.emplace_back(dot(pool[v] - a, d), v);
            order.emplace_back(dot(d, d), edges[i][1]);
            std::sort(order.begin(), order.end());
            for (std::size_t k = 0; k + 1 < order.size(); ++k)
                if (order[k].second != order[k + 1].second)
                    next.push_back({order[k].second, order[k + 1].second});
        }
        edges = std::move(next);
    }
    normalize();
}

std::vector<Face> polygonize(const VertexPool& pool,
                             const std::vector<std::array<VId, 2>>& edges) {
    // outgoing directed edges per vertex, CCW by angle
    std::unordered_map<VId, std::vector<VId>> out;
    for (const auto& e : edges) {
        out[e[0]].push_back(e[1]);
        out[e[1]].push_back(e[0]);
    }
    for (auto& [v, tos] : out) {
        Point pv = pool[v];
        std::sort(tos.begin(), tos.end(), [&](VId a, VId b) {
            Point pa = pool[a] - pv, pb = pool[b] - pv;
            double aa = std::atan2(pa.y, pa.x), ab = std::atan2(pb.y, pb.x);
            if (aa != ab) return aa < ab;
            return a < b;
        });
    }

    std::set<std::pair<VId, VId>> visited;
    std::vector<std::vector<VId>> pos_loops, neg_loops;

    std::vector<std::array<VId, 2>> sorted_edges = edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());

    for (const auto& e : sorted_edges) {
        for (auto [u0, v0] : {std::pair<VId, VId>{e[0], e[1]}, std::pair<VId, VId>{e[1], e[0]}}) {
            if (visited.count({u0, v0})) continue;
            std::vector<VId> walk;
            VId u = u0, v = v0;
            while (!visited.count({u, v})) {
                visited.insert({u, v});
                walk.push_back(u);
                const auto& tos = out[v];
                std::size_t idx = static_cast<std::size_t>(
                    std::find(tos.begin(), tos.end(), u) - tos.begin());
                VId w = tos[(idx + tos.size() - 1) % tos.size()];
                u = v;
                v = w;
            }
            for (auto& loop : split_walk(pool, std::move(walk))) {
                double a = loop_area(pool, loop);
                if (a > 0)
                    pos_loops.push_back(std::move(loop));
                else if (a < 0)
                    neg_loops.push_back(std::move(loop));
            }
        }
    }

    std::vector<Face> faces;
    faces.reserve(pos_loops.size());
    for (auto& loop : pos_loops) {
        Face f;
        f.outer = std::move(loop);
        faces.push_back(std::move(f));
    }

    // attach negative loops as holes of the smallest containing face
    for (const auto& neg : neg_loops) {
        std::vector<VId> canon = neg;
        std::sort(canon.begin(), canon.end());
        int best = -1;
        double best_area = 0.0;
        for (std::size_t fi = 0; fi < faces.size(); ++fi) {
            const Face& f = faces[fi];
            std::vector<VId> fc = f.outer;
            std::sort(fc.begin(), fc.end());
            if (fc == canon) continue;  // the mirror loop of this very region
            Ring outer = loop_ring(pool, f.outer);
            bool strict = false, outside = false;
            for (VId v : neg) {
                int c = point_in_ring(pool[v], outer);
                if (c > 0) strict = true;
                if (c < 0) { outside = true; break; }
            }
            if (outside || !strict) continue;
            double a = loop_area(pool, f.outer);
            if (best < 0 || a < best_area) { best = static_cast<int>(fi); best_area = a; }
        }
        if (best >= 0) faces[static_cast<std::size_t>(best)].holes.push_back(neg);
    }

    for (Face& f : faces) {
        f.area = loop_area(pool, f.outer);
        std::vector<Ring> hole_rings;
        for (const auto& h : f.holes) {
            f.area += loop_area(pool, h);  // holes traced CW: negative
            hole_rings.push_back(loop_ring(pool, h));
        }
        f.rep = representative_point(loop_ring(pool, f.outer), hole_rings);
    }
    return faces;
}

bool unit_contains(const Unit& u, Point p) {
    bool in = false;
    for (const Ring& r : u.outers)
        if (point_in_ring(p, r) >= 0) { in = true; break; }
    if (!in) return false;
    for (const Ring& r : u.holes)
        if (point_in_ring(p, r) > 0) return false;
    return true;
}

RefinedTiling refine(const std::vector<Unit>& units, const std::vector<Ring>& extra_boundaries,
                     double snap_tol) {
    RefinedTiling rt;
    rt.pool = VertexPool(snap_tol);

    auto add_ring = [&](const Ring& r) {
        std::vector<VId> ids;
        for (Point p : r.pts) ids.push_back(rt.pool.add(p));
        for (std::size_t i = 0; i < ids.size(); ++i) {
            VId a = ids[i], b = ids[(i + 1) % ids.size()];
            if (a != b) rt.edges.push_back({a, b});
        }
    };
    for (const Unit& u : units) {
        for (const Ring& r : u.outers) add_ring(r);
        for (const Ring& r : u.holes) add_ring(r);
    }
    for (const Ring& r : extra_boundaries) add_ring(r);

    node_edges(rt.pool, rt.edges);
    rt.faces = polygonize(rt.pool, rt.edges);

    // bbox prefilter per unit
    std::vector<BBox> boxes(units.size());
    for (std::size_t k = 0; k < units.size(); ++k) {
        for (const Ring& r : units[k].outers)
            for (Point p : r.pts) boxes[k].grow(p);
    }
    rt.owner_sets.resize(rt.faces.size());
    for (std::size_t fi = 0; fi < rt.faces.size(); ++fi) {
        Point p = rt.faces[fi].rep;
        for (std::size_t k = 0; k < units.size(); ++k) {
            const BBox& b = boxes[k];
            if (p.x < b.xmin - snap_tol || p.x > b.xmax + snap_tol || p.y < b.ymin - snap_tol ||
                p.y > b.ymax + snap_tol)
                continue;
            if (unit_contains(units[k], p)) rt.owner_sets[fi].push_back(static_cast<int>(k));
        }
    }
    return rt;
}

std::vector<std::array<VId, 2>> face_boundary_edges(const Face& f) {
    std::vector<std::array<VId, 2>> out;
    auto add = [&](const std::vector<VId>& loop) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
            VId a = loop[i], b = loop[(i + 1) % loop.size()];
            if (a > b) std::swap(a, b);
            out.push_back({a, b});
        }
    };
    add(f.outer);
    for (const auto& h : f.holes) add(h);
    return out;
}

EdgeFaceMap edge_face_map(const std::vector<Face>& faces) {
    EdgeFaceMap m;
    for (std::size_t fi = 0; fi < faces.size(); ++fi)
        for (const auto& e : face_boundary_edges(faces[fi])) m[e].push_back(static_cast<int>(fi));
    return m;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(std::size_t n) : p(n) {
        for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
    }
    int find(int a) { return p[static_cast<std::size_t>(a)] == a ? a : p[static_cast<std::size_t>(a)] = find(p[static_cast<std::size_t>(a)]); }
    void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

DiagnosticsReport doctor(const std::vector<Unit>& units, double snap_tol) {
    DiagnosticsReport rep;
    if (units.empty()) return rep;
    if (snap_tol < 0) snap_tol = default_snap_tol(units);

    std::vector<Ring> extra;
    {
        std::vector<Point> all;
        for (const Unit& u : units)
            for (const Ring& r : u.outers)
                for (Point p : r.pts) all.push_back(p);
        auto hull = convex_hull(all);
        if (hull.size() >= 3) {
            Ring hr;
            for (std::size_t i : hull) hr.pts.push_back(all[i]);
            extra.push_back(hr);
        }
    }

    RefinedTiling rt = refine(units, extra, snap_tol);
    auto efm = edge_face_map(rt.faces);

    auto order = [&](int fi) { return rt.owner_sets[static_cast<std::size_t>(fi)].size(); };

    UnionFind uf(rt.faces.size());
    for (const auto& [e, fs] : efm)
        for (std::size_t i = 1; i < fs.size(); ++i) {
            bool g0 = order(fs[0]) == 0 && order(fs[i]) == 0;
            bool ov = order(fs[0]) >= 2 && order(fs[i]) >= 2;
            if (g0 || ov) uf.unite(fs[0], fs[i]);
        }

    // connected components of the units themselves: units sharing a boundary
    // edge or overlapping belong to one component
    UnionFind ucomp(units.size());
    for (std::size_t fi = 0; fi < rt.faces.size(); ++fi) {
        const auto& own = rt.owner_sets[fi];
        for (std::size_t k = 1; k < own.size(); ++k) ucomp.unite(own[0], own[k]);
    }
    for (const auto& [e, fs] : efm) {
        std::vector<int> touching;
        for (int fi : fs)
            for (int u : rt.owner_sets[static_cast<std::size_t>(fi)]) touching.push_back(u);
        for (std::size_t k = 1; k < touching.size(); ++k) ucomp.unite(touching[0], touching[k]);
    }

    std::map<int, std::vector<int>> clusters;  // root -> faces
    for (std::size_t fi = 0; fi < rt.faces.size(); ++fi)
        if (order(static_cast<int>(fi)) != 1)
            clusters[uf.find(static_cast<int>(fi))].push_back(static_cast<int>(fi));

    for (const auto& [root, fs] : clusters) {
        bool is_gap = order(fs[0]) == 0;
        double area = 0.0;
        std::set<int> touching_units;
        bool hull_contact = false;
        std::set<int> members(fs.begin(), fs.end());
        for (int fi : fs) {
            area += rt.faces[static_cast<std::size_t>(fi)].area;
            for (const auto& e : face_boundary_edges(rt.faces[static_cast<std::size_t>(fi)])) {
                const auto& shared = efm[e];
                bool has_other = false;
                for (int nb : shared)
                    if (!members.count(nb)) {
                        has_other = true;
                        for (int u : rt.owner_sets[static_cast<std::size_t>(nb)])
                            touching_units.insert(u);
                    }
                if (shared.size() == 1 && !has_other) hull_contact = true;
            }
        }
        if (is_gap) {
            if (hull_contact) {
                // a fringe region along the hull is only a defect when it
                // separates otherwise-disconnected parts of the tiling
                std::set<int> comps;
                for (int u : touching_units) comps.insert(ucomp.find(u));
                if (comps.size() < 2) continue;
            }
            ++rep.gap_count;
            rep.gap_area += area;
            for (int u : touching_units)
                rep.unit_issues[units[static_cast<std::size_t>(u)].id].push_back("adjacent gap");
        } else {
            ++rep.overlap_count;
            rep.overlap_area += area;
            std::set<int> owners;
            for (int fi : fs)
                for (int u : rt.owner_sets[static_cast<std::size_t>(fi)]) owners.insert(u);
            for (int u : owners)
                rep.unit_issues[units[static_cast<std::size_t>(u)].id].push_back("overlap");
        }
    }
    return rep;
}

std::vector<std::vector<VId>> trace_loops(const VertexPool& pool,
                                          const std::set<std::pair<VId, VId>>& directed) {
    std::map<VId, std::vector<VId>> outgoing;
    for (const auto& [a, b] : directed) outgoing[a].push_back(b);
    auto angle = [&](VId from, VId to) {
        return std::atan2(pool[to].y - pool[from].y, pool[to].x - pool[from].x);
    };
    for (auto& [a, targets] : outgoing)
        std::sort(targets.begin(), targets.end(),
                  [&](VId u, VId v) { return angle(a, u) < angle(a, v); });
    // next edge: first outgoing edge clockwise from the reversed incoming edge
    auto next_vertex = [&](VId u, VId v) {
        const auto& targets = outgoing[v];
        double rev = angle(v, u);
        VId best = -1;
        for (VId w : targets)
            if (angle(v, w) < rev && (best < 0 || angle(v, w) > angle(v, best))) best = w;
        return best >= 0 ? best : targets.back();
    };
    std::set<std::pair<VId, VId>> visited;
    std::vector<std::vector<VId>> loops;
    for (const auto& start : directed) {
        if (visited.count(start)) continue;
        std::vector<VId> loop;
        auto cur = start;
        do {
            if (loop.size() > directed.size())
                throw std::runtime_error("trace_loops: boundary walk does not close");
            visited.insert(cur);
            loop.push_back(cur.first);
            cur = {cur.second, next_vertex(cur.first, cur.second)};
        } while (cur != start);
        if (loop_area(pool, loop) != 0.0) loops.push_back(std::move(loop));
    }
    return loops;
}

MergedRegion merge_rings(const std::vector<Ring>& outers, const std::vector<Ring>& holes) {
    VertexPool pool(0.0);
    std::set<std::pair<VId, VId>> dir;
    auto toggle = [&](VId a, VId b) {
        auto rev = dir.find({b, a});
        if (rev != dir.end())
            dir.erase(rev);
        else
            dir.insert({a, b});
    };
    auto add_ring = [&](const Ring& r, bool reverse) {
        std::vector<VId> ids;
        for (const Point& p : r.pts) ids.push_back(pool.add(p));
        for (std::size_t k = 0; k < ids.size(); ++k) {
            VId a = ids[k], b = ids[(k + 1) % ids.size()];
            if (a == b) continue;
            if (reverse)
                toggle(b, a);
            else
                toggle(a, b);
        }
    };
    for (const Ring& r : outers) add_ring(r, signed_area(r) < 0);
    for (const Ring& r : holes) add_ring(r, signed_area(r) > 0);  // interior on the left => CW

    MergedRegion out;
    for (const auto& loop : trace_loops(pool, dir)) {
        Ring ring = loop_ring(pool, loop);
        if (signed_area(ring) > 0) {
            out.outers.push_back(std::move(ring));
        } else {
            std::reverse(ring.pts.begin(), ring.pts.end());
            out.holes.push_back(std::move(ring));
        }
    }
    return out;
}

MergedRegion merge_rings_noded(const std::vector<Ring>& outers, const std::vector<Ring>& holes,
                               double snap_tol) {
    VertexPool pool(snap_tol);
    std::vector<std::array<VId, 2>> edges;
    auto add_ring = [&](const Ring& r) {
        std::vector<VId> ids;
        for (const Point& p : r.pts) ids.push_back(pool.add(p));
        for (std::size_t k = 0; k < ids.size(); ++k) {
            VId a = ids[k], b = ids[(k + 1) % ids.size()];
            if (a != b) edges.push_back({a, b});
        }
    };
    for (const Ring& r : outers) add_ring(r);
    for (const Ring& r : holes) add_ring(r);
    node_edges(pool, edges);
    auto faces = polygonize(pool, edges);

    // union of the faces covered by the input region; their shared edges are
    // identical after noding, so the directed-edge toggling cancels exactly
    std::set<std::pair<VId, VId>> dir;
    auto toggle = [&](VId a, VId b) {
        auto rev = dir.find({b, a});
        if (rev != dir.end())
            dir.erase(rev);
        else
            dir.insert({a, b});
    };
    for (const Face& f : faces) {
        int cover = 0;
        for (const Ring& r : outers)
            if (point_in_ring(f.rep, r) > 0) ++cover;
        for (const Ring& r : holes)
            if (point_in_ring(f.rep, r) > 0) --cover;
        if (cover <= 0) continue;
        auto add_loop = [&](const std::vector<VId>& loop) {
            for (std::size_t k = 0; k < loop.size(); ++k)
                toggle(loop[k], loop[(k + 1) % loop.size()]);
        };
        add_loop(f.outer);
        for (const auto& h : f.holes) add_loop(h);
    }

    MergedRegion out;
    for (const auto& loop : trace_loops(pool, dir)) {
        Ring ring = loop_ring(pool, loop);
        if (signed_area(ring) > 0) {
            out.outers.push_back(std::move(ring));
        } else {
            std::reverse(ring.pts.begin(), ring.pts.end());
            out.holes.push_back(std::move(ring));
        }
    }
    return out;
}

}  // namespace tilerepair
