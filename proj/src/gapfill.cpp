#include "tilerepair/gapfill.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "tilerepair/paths.hpp"
#include "tilerepair/visibility.hpp"

namespace tilerepair {

namespace {

constexpr int kAuxSource = -1;  // construction segment (path / bisector / diagonal)
constexpr int kNoSource = -9;

double ring_diameter(const Ring& r) {
    double x0 = r.pts[0].x, x1 = x0, y0 = r.pts[0].y, y1 = y0;
    for (const Point& p : r.pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    return std::hypot(x1 - x0, y1 - y0);
}

// sub index for every boundary edge of the gap
std::vector<int> edge_to_sub(std::size_t n, const std::vector<Sub>& subs) {
    std::vector<int> e2s(n, 0);
    if (subs.size() <= 1) return e2s;
    for (std::size_t s = 0; s < subs.size(); ++s) {
        std::size_t span = (subs[s].end + n - subs[s].start) % n;
        for (std::size_t k = 0; k < span; ++k)
            e2s[(subs[s].start + k) % n] = static_cast<int>(s);
    }
    return e2s;
}

// Local arrangement of the gap boundary plus interior construction segments.
// Every noded edge is traced back to its source: a boundary edge (giving the
// sub index) or a construction segment.
struct MiniArr {
    VertexPool pool{0.0};
    std::vector<std::array<VId, 2>> edges;
    std::vector<Face> faces;
    EdgeFaceMap efm;
    struct EdgeSrc {
        int sub = kNoSource;  // boundary sub index, or kAuxSource / kNoSource
        bool aux = false;     // also covered by a construction segment
    };
    std::map<std::array<VId, 2>, EdgeSrc> src;

    MiniArr(const GapBoundary& g, const std::vector<Sub>& subs, const std::vector<Segment>& aux) {
        double diam = ring_diameter(g.poly);
        // fp error is absolute in the coordinate magnitude, so a tiny gap far
        // from the origin still needs a magnitude-based tolerance floor
        double scale = diam;
        for (const Point& p : g.poly.pts)
            scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
        double tol = 1e-12 * scale;
        pool = VertexPool(tol);
        std::size_t n = g.poly.size();
        std::vector<int> e2s = edge_to_sub(n, subs);
        struct Src {
            Segment seg;
            int tag;
        };
        std::vector<Src> sources;
        for (std::size_t k = 0; k < n; ++k) {
            Segment s{g.poly.at(k), g.poly.at(k + 1)};
            edges.push_back({pool.add(s.a), pool.add(s.b)});
            sources.push_back({s, e2s[k]});
        }
        for (const Segment& s : aux) {
            edges.push_back({pool.add(s.a), pool.add(s.b)});
            sources.push_back({s, kAuxSource});
        }
        node_edges(pool, edges);
        faces = polygonize(pool, edges);
        efm = edge_face_map(faces);

        double eps = std::max(8.0 * tol, 1e-14 * scale);
        auto on_source = [&](Point a, Point b, const Segment& s) {
            return point_segment_distance(a, s) <= eps && point_segment_distance(b, s) <= eps &&
                   point_segment_distance(0.5 * (a + b), s) <= eps;
        };
        for (const auto& e : edges) {
            std::array<VId, 2> key{std::min(e[0], e[1]), std::max(e[0], e[1])};
            Point a = pool[e[0]], b = pool[e[1]];
            EdgeSrc es;
            for (const Src& s : sources) {
                if (!on_source(a, b, s.seg)) continue;
                if (s.tag == kAuxSource)
                    es.aux = true;
                else if (es.sub < 0)
                    es.sub = s.tag;
            }
            if (es.sub == kNoSource && es.aux) es.sub = kAuxSource;
            src[key] = es;
        }
    }

    // boundary sub index, else kAuxSource for pure construction edges
    int tag(const std::array<VId, 2>& e) const {
        std::array<VId, 2> key{std::min(e[0], e[1]), std::max(e[0], e[1])};
        auto it = src.find(key);
        return it == src.end() ? kNoSource : it->second.sub;
    }

    // true when the edge also lies on a construction segment: the contact
    // between the face and that sub is degenerate (zero-width region)
    bool aux_covered(const std::array<VId, 2>& e) const {
        std::array<VId, 2> key{std::min(e[0], e[1]), std::max(e[0], e[1])};
        auto it = src.find(key);
        return it != src.end() && it->second.aux;
    }

    int neighbor(const std::array<VId, 2>& e, int f) const {
        std::array<VId, 2> key{std::min(e[0], e[1]), std::max(e[0], e[1])};
        auto it = efm.find(key);
        if (it == efm.end()) return -1;
        int other = -1;
        for (int g : it->second)
            if (g != f) {
                if (other >= 0) return -1;  // non-manifold, give up
                other = g;
            }
        return other;
    }
};

struct SplitSpec {
    std::vector<Segment> aux;
    std::vector<char> assignable;    // per sub index
    bool interior_incenter = false;  // faces touching no sub: incenter-split
    bool remaining_ok = false;       // faces touching other subs become new gaps
};

bool fail(FillResult& out, const std::string& why) {
    out.filled = false;
    out.reason = why;
    return false;
}

// Cuts the gap along the construction segments and distributes the resulting
// faces: faces touching exactly one assignable sub join that sub's unit;
// depending on the spec, untouched faces are incenter-split and faces touching
// other subs are queued as smaller gaps.
bool split_gap(const GapBoundary& g, const std::vector<Sub>& subs, const SplitSpec& spec,
               FillResult& out, std::vector<std::pair<GapBoundary, bool>>* queue) {
    MiniArr arr(g, subs, spec.aux);
    enum Kind { Assigned, Interior, Remaining };
    std::size_t nf = arr.faces.size();
    std::vector<int> kind(nf, Remaining), owner_of(nf, -1);

    for (std::size_t f = 0; f < nf; ++f) {
        if (!arr.faces[f].holes.empty()) return fail(out, "cut piece with a hole");
        std::set<int> in_assign, other;
        for (const auto& e : face_boundary_edges(arr.faces[f])) {
            int s = arr.tag(e);
            if (s == kNoSource) return fail(out, "untraceable cut edge");
            if (s < 0 || arr.aux_covered(e)) continue;
            (spec.assignable[static_cast<std::size_t>(s)] ? in_assign : other).insert(s);
        }
        bool other_solid = false;  // touches a non-exterior, non-assignable sub
        for (int s : other)
            if (subs[static_cast<std::size_t>(s)].owner != kExteriorTag) other_solid = true;

        if (in_assign.size() == 1 && !(spec.remaining_ok && other_solid)) {
            kind[f] = Assigned;
            owner_of[f] = subs[static_cast<std::size_t>(*in_assign.begin())].owner;
        } else if (spec.remaining_ok) {
            kind[f] = Remaining;
        } else if (in_assign.empty() && !other_solid && spec.interior_incenter) {
            kind[f] = Interior;
        } else {
            return fail(out, "ambiguous piece adjacency");
        }
    }

    for (std::size_t f = 0; f < nf; ++f) {
        const Face& face = arr.faces[f];
        if (kind[f] == Assigned) {
            out.pieces.push_back({loop_ring(arr.pool, face.outer), owner_of[f]});
        } else if (kind[f] == Interior) {
            // expected to be the central triangle of the bisector construction
            std::vector<Point> corners;
            std::size_t nv = face.outer.size();
            for (std::size_t k = 0; k < nv; ++k) {
                Point prev = arr.pool[face.outer[(k + nv - 1) % nv]];
                Point cur = arr.pool[face.outer[k]];
                Point next = arr.pool[face.outer[(k + 1) % nv]];
                if (orientation(prev, cur, next) != Orientation::Collinear) corners.push_back(cur);
            }
            if (corners.size() != 3) return fail(out, "interior piece is not a triangle");
            Point c = incenter(corners[0], corners[1], corners[2]);
            for (std::size_t k = 0; k < nv; ++k) {
                std::array<VId, 2> e{face.outer[k], face.outer[(k + 1) % nv]};
                int nb = arr.neighbor(e, static_cast<int>(f));
                if (nb < 0 || kind[static_cast<std::size_t>(nb)] != Assigned)
                    return fail(out, "interior triangle side without an assigned neighbor");
                out.pieces.push_back(
                    {Ring{{arr.pool[e[0]], arr.pool[e[1]], c}}, owner_of[static_cast<std::size_t>(nb)]});
            }
        }
    }

    // Remaining faces are smaller gaps, re-entered from the top.  Ones that
    // share a cut edge merge into a single smaller gap: splitting them there
    // would leave a cut edge with no unit to inherit.
    std::vector<int> parent(nf, -1);
    bool any_remaining = false;
    for (std::size_t f = 0; f < nf; ++f)
        if (kind[f] == Remaining) {
            parent[f] = static_cast<int>(f);
            any_remaining = true;
        }
    if (!any_remaining) return true;
    if (!queue) return fail(out, "unexpected leftover piece");
    auto find = [&](int f) {
        while (parent[static_cast<std::size_t>(f)] != f) f = parent[static_cast<std::size_t>(f)];
        return f;
    };
    for (const auto& [key, fs] : arr.efm)
        if (fs.size() == 2 && parent[static_cast<std::size_t>(fs[0])] >= 0 &&
            parent[static_cast<std::size_t>(fs[1])] >= 0)
            parent[static_cast<std::size_t>(find(fs[0]))] = find(fs[1]);

    std::map<int, std::vector<int>> clusters;
    for (std::size_t f = 0; f < nf; ++f)
        if (kind[f] == Remaining) clusters[find(static_cast<int>(f))].push_back(static_cast<int>(f));
    for (const auto& [root, members] : clusters) {
        std::set<std::pair<VId, VId>> dir;
        auto toggle = [&](VId a, VId b) {
            auto rev = dir.find({b, a});
            if (rev != dir.end())
                dir.erase(rev);
            else
                dir.insert({a, b});
        };
        for (int f : members) {
            const auto& outer = arr.faces[static_cast<std::size_t>(f)].outer;
            for (std::size_t k = 0; k < outer.size(); ++k)
                toggle(outer[k], outer[(k + 1) % outer.size()]);
        }
        std::vector<std::vector<VId>> loops = trace_loops(arr.pool, dir);
        const std::vector<VId>* pos = nullptr;
        for (const auto& loop : loops) {
            if (loop_area(arr.pool, loop) < 0) return fail(out, "leftover piece with a hole");
            pos = &loop;
        }
        if (!pos || loops.size() != 1) return fail(out, "leftover piece is not connected");
        GapBoundary smaller;
        smaller.poly = loop_ring(arr.pool, *pos);
        std::size_t nv = pos->size();
        for (std::size_t k = 0; k < nv; ++k) {
            std::array<VId, 2> e{(*pos)[k], (*pos)[(k + 1) % nv]};
            int s = arr.tag(e);
            if (s >= 0) {
                smaller.tags.push_back(subs[static_cast<std::size_t>(s)].owner);
                continue;
            }
            // cut edge: the assigned unit on the other side becomes the neighbor
            std::array<VId, 2> key{std::min(e[0], e[1]), std::max(e[0], e[1])};
            auto it = arr.efm.find(key);
            int nb = -1;
            if (it != arr.efm.end())
                for (int g : it->second)
                    if (kind[static_cast<std::size_t>(g)] == Assigned) nb = g;
            if (nb < 0) return fail(out, "cut edge without an assigned side");
            smaller.tags.push_back(owner_of[static_cast<std::size_t>(nb)]);
        }
        queue->push_back({std::move(smaller), false});
    }
    return true;
}

// shortest paths between sub endpoints replace the arcs; the area between is
// carved off to the sub's unit, and the simplified remainder is re-queued
std::vector<GapBoundary> convexify_all(const GapBoundary& g, const std::vector<Sub>& subs,
                                       std::vector<FillPiece>& pieces) {
    VertexPool pool(0.0);
    for (const Point& p : g.poly.pts) pool.add(p);
    TaggedWalk<int> walk;
    for (const Sub& s : subs) {
        std::vector<std::size_t> chain;
        if (s.owner == kExteriorTag) {
            chain = boundary_arc(g.poly, s.start, s.end);  // exterior arcs stay as-is
        } else {
            auto cx = convexify_sub_boundary(g.poly, s.start, s.end);
            for (auto& r : cx.carved) pieces.push_back({std::move(r), s.owner});
            chain = std::move(cx.replacement);
        }
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            walk.verts.push_back(static_cast<VId>(chain[k]));
            walk.tags.push_back(s.owner);
        }
    }
    std::vector<GapBoundary> out;
    for (auto& w : split_walk_tagged(pool, std::move(walk))) {
        if (loop_area(pool, w.verts) <= 0) continue;
        GapBoundary piece;
        piece.poly = loop_ring(pool, w.verts);
        piece.tags = std::move(w.tags);
        out.push_back(std::move(piece));
    }
    return out;
}

bool fill_two(const GapBoundary& g, const std::vector<Sub>& subs, FillResult& out) {
    std::size_t a = subs[0].start, b = subs[0].end;
    auto path = shortest_path(g.poly, a, b);
    // if the path runs entirely along one sub, that side is empty
    if (path == boundary_arc(g.poly, a, b)) {
        out.pieces.push_back({g.poly, subs[1].owner});
        return true;
    }
    auto rev = path;
    std::reverse(rev.begin(), rev.end());
    if (rev == boundary_arc(g.poly, b, a)) {
        out.pieces.push_back({g.poly, subs[0].owner});
        return true;
    }
    SplitSpec spec;
    spec.assignable = {1, 1};
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        spec.aux.push_back({g.poly.pts[path[k]], g.poly.pts[path[k + 1]]});
    return split_gap(g, subs, spec, out, nullptr);
}

// true if boundary edge index e lies on sub s
bool edge_in_sub(std::size_t n, const Sub& s, std::size_t e) {
    return (e + n - s.start) % n < (s.end + n - s.start) % n;
}

bool fill_three(const GapBoundary& g, const std::vector<Sub>& subs, FillResult& out) {
    const Ring& poly = g.poly;
    std::size_t n = poly.size();
    double diam = ring_diameter(poly);

    std::array<Ray, 3> rays;
    for (int k = 0; k < 3; ++k) rays[static_cast<std::size_t>(k)] = angle_bisector_ray(poly, subs[static_cast<std::size_t>(k)].start);

    // each bisector must first meet the boundary on the opposite sub
    for (std::size_t k = 0; k < 3; ++k) {
        double best_t = -1;
        std::size_t best_e = 0;
        for (std::size_t e = 0; e < n; ++e) {
            Point p = poly.at(e), q = poly.at(e + 1);
            double denom = cross(rays[k].dir, q - p);
            if (denom == 0) continue;
            double t = cross(p - rays[k].origin, q - p) / denom;
            double u = cross(p - rays[k].origin, rays[k].dir) / denom;
            if (t <= 1e-9 * diam || u < -1e-12 || u > 1 + 1e-12) continue;
            if (best_t < 0 || t < best_t) {
                best_t = t;
                best_e = e;
            }
        }
        if (best_t < 0) return fail(out, "bisector does not meet the boundary");
        if (!edge_in_sub(n, subs[(k + 1) % 3], best_e))
            return fail(out, "bisector does not reach the opposite side");
    }

    auto ray_cross = [](const Ray& r1, const Ray& r2, Point& x) {
        double denom = cross(r1.dir, r2.dir);
        if (denom == 0) return false;
        Point d = r2.origin - r1.origin;
        double t = cross(d, r2.dir) / denom;
        double s = cross(d, r1.dir) / denom;
        if (t <= 0 || s <= 0) return false;
        x = r1.origin + t * r1.dir;
        return true;
    };
    Point x01, x02, x12;
    if (!ray_cross(rays[0], rays[1], x01) || !ray_cross(rays[0], rays[2], x02) ||
        !ray_cross(rays[1], rays[2], x12))
        return fail(out, "bisectors fail to meet pairwise");
    for (const Point& x : {x01, x02, x12})
        if (point_in_ring(x, poly) != 1) return fail(out, "bisector crossing outside the gap");

    SplitSpec spec;
    spec.assignable = {1, 1, 1};
    spec.interior_incenter = true;
    double tol = 1e-9 * diam;
    if (dist(x01, x02) <= tol && dist(x01, x12) <= tol && dist(x02, x12) <= tol) {
        Point c = (1.0 / 3.0) * (x01 + x02 + x12);
        for (std::size_t k = 0; k < 3; ++k) spec.aux.push_back({rays[k].origin, c});
    } else {
        spec.aux.push_back({rays[0].origin, dist(rays[0].origin, x01) >= dist(rays[0].origin, x02) ? x01 : x02});
        spec.aux.push_back({rays[1].origin, dist(rays[1].origin, x01) >= dist(rays[1].origin, x12) ? x01 : x12});
        spec.aux.push_back({rays[2].origin, dist(rays[2].origin, x02) >= dist(rays[2].origin, x12) ? x02 : x12});
    }
    return split_gap(g, subs, spec, out, nullptr);
}

// two units and one exterior arc: cut from the units' meeting vertex to the
// nearest exterior vertex
bool fill_three_exterior(const GapBoundary& g, const std::vector<Sub>& subs, FillResult& out) {
    std::size_t e = 0;
    while (subs[e].owner != kExteriorTag) ++e;
    std::size_t p = (e + 1) % 3, q = (e + 2) % 3;
    std::size_t v = subs[p].end;  // where the two units meet

    // prefer interior vertices of the exterior arc; its endpoints belong to
    // the units and cutting toward them degenerates onto the boundary
    auto arc = boundary_arc(g.poly, subs[e].start, subs[e].end);
    std::size_t lo = arc.size() > 2 ? 1 : 0, hi = arc.size() > 2 ? arc.size() - 1 : arc.size();
    std::size_t x = arc[lo];
    double best = dist(g.poly.pts[x], g.poly.pts[v]);
    for (std::size_t k = lo + 1; k < hi; ++k) {
        double d = dist(g.poly.pts[arc[k]], g.poly.pts[v]);
        if (d < best) {
            best = d;
            x = arc[k];
        }
    }
    auto path = shortest_path(g.poly, v, x);
    SplitSpec spec;
    spec.assignable.assign(3, 0);
    spec.assignable[p] = spec.assignable[q] = 1;
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        spec.aux.push_back({g.poly.pts[path[k]], g.poly.pts[path[k + 1]]});
    return split_gap(g, subs, spec, out, nullptr);
}

bool fill_many(const GapBoundary& g, const std::vector<Sub>& subs, FillResult& out,
               std::vector<std::pair<GapBoundary, bool>>& queue) {
    const Ring& poly = g.poly;
    std::size_t m = subs.size();
    Triangulation tn = build_triangulation(poly);

    struct Cand {
        double d;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i + 1 || (i == 0 && j == m - 1)) continue;  // adjacent subs
            if (subs[i].owner == kExteriorTag && subs[j].owner == kExteriorTag) continue;
            ArcPair pair{subs[i].start, subs[i].end, subs[j].start, subs[j].end};
            cands.push_back({pair_distance(poly, pair), i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    // A degenerate construction (paths hugging the boundary) can hand the
    // whole gap back as its own remainder; detect that, undo, and move on to
    // the next candidate pair instead of looping.
    double gap_area = signed_area(poly);
    std::size_t pieces0 = out.pieces.size(), queue0 = queue.size();
    auto made_progress = [&] {
        if (out.pieces.size() > pieces0) return true;
        if (queue.size() != queue0 + 1) return true;
        return signed_area(queue.back().first.poly) < gap_area * (1.0 - 1e-12);
    };

    for (const Cand& c : cands) {
        bool i_ext = subs[c.i].owner == kExteriorTag;
        bool j_ext = subs[c.j].owner == kExteriorTag;
        if (i_ext || j_ext) {
            // nearest pair touches the exterior: wall the unit off toward the
            // closest exterior vertex instead of bridging
            std::size_t se = i_ext ? c.i : c.j, sb = i_ext ? c.j : c.i;
            auto arc = boundary_arc(poly, subs[se].start, subs[se].end);
            auto barc = boundary_arc(poly, subs[sb].start, subs[sb].end);
            if (arc.size() > 2) arc = {arc.begin() + 1, arc.end() - 1};  // interior vertices
            std::size_t x = arc[0];
            double best = -1;
            for (std::size_t v : arc) {
                double dv = -1;
                for (std::size_t k = 0; k + 1 < barc.size(); ++k) {
                    double t = point_segment_distance(poly.pts[v],
                                                      {poly.pts[barc[k]], poly.pts[barc[k + 1]]});
                    if (dv < 0 || t < dv) dv = t;
                }
                if (best < 0 || dv < best) {
                    best = dv;
                    x = v;
                }
            }
            auto p1 = shortest_path(poly, tn, x, subs[sb].start);
            auto p2 = shortest_path(poly, tn, x, subs[sb].end);
            SplitSpec spec;
            spec.assignable.assign(m, 0);
            spec.assignable[sb] = 1;
            spec.remaining_ok = true;
            for (std::size_t k = 0; k + 1 < p1.size(); ++k)
                spec.aux.push_back({poly.pts[p1[k]], poly.pts[p1[k + 1]]});
            for (std::size_t k = 0; k + 1 < p2.size(); ++k)
                spec.aux.push_back({poly.pts[p2[k]], poly.pts[p2[k + 1]]});
            if (!split_gap(g, subs, spec, out, &queue)) return false;
            if (made_progress()) return true;
            out.pieces.resize(pieces0);
            queue.resize(queue0);
            continue;
        }

        ArcPair pair{subs[c.i].start, subs[c.i].end, subs[c.j].start, subs[c.j].end};
        if (!strongly_mutually_visible(poly, tn, pair)) continue;  // skip rule
        Bridge br;
        try {
            br = build_bridge(poly, tn, pair);
        } catch (const BridgeError&) {
            continue;
        }
        SplitSpec spec;
        spec.assignable.assign(m, 0);
        spec.assignable[c.i] = spec.assignable[c.j] = 1;
        spec.remaining_ok = true;
        for (std::size_t k = 0; k + 1 < br.beta1.size(); ++k)
            spec.aux.push_back({poly.pts[br.beta1[k]], poly.pts[br.beta1[k + 1]]});
        for (std::size_t k = 0; k + 1 < br.beta2.size(); ++k)
            spec.aux.push_back({poly.pts[br.beta2[k]], poly.pts[br.beta2[k + 1]]});
        if (!split_gap(g, subs, spec, out, &queue)) return false;
        if (made_progress()) return true;
        out.pieces.resize(pieces0);
        queue.resize(queue0);
    }
    return fail(out, "no strongly mutually visible pair");
}

}  // namespace

std::vector<Sub> gap_subs(const GapBoundary& g) {
    std::size_t n = g.poly.size();
    std::size_t s0 = 0;
    bool uniform = true;
    for (std::size_t k = 0; k < n; ++k)
        if (g.tags[k] != g.tags[(k + n - 1) % n]) {
            s0 = k;
            uniform = false;
            break;
        }
    std::vector<Sub> subs;
    if (uniform) {
        subs.push_back({0, 0, g.tags[0]});
        return subs;
    }
    std::size_t k = s0;
    do {
        Sub s;
        s.start = k;
        s.owner = g.tags[k];
        std::size_t j = k;
        while (g.tags[j] == s.owner) {
            j = (j + 1) % n;
            if (j == s0) break;
        }
        s.end = j;
        subs.push_back(s);
        k = j;
    } while (k != s0);
    return subs;
}

std::vector<FillPiece> fill_triangle_incenter(const Ring& tri, const std::array<int, 3>& owners) {
    if (tri.size() != 3 || signed_area(tri) <= 0)
        throw std::invalid_argument("fill_triangle_incenter: need a CCW triangle");
    Point c = incenter(tri);
    std::vector<FillPiece> out;
    for (std::size_t k = 0; k < 3; ++k)
        out.push_back({Ring{{tri.at(k), tri.at(k + 1), c}}, owners[k]});
    return out;
}

FillResult fill_gap(const GapBoundary& g0) {
    FillResult out;
    std::vector<std::pair<GapBoundary, bool>> queue{{g0, false}};
    int guard = 0;
    while (!queue.empty()) {
        if (++guard > 10000) {
            fail(out, "fill did not terminate");
            return out;
        }
        auto [g, simplified] = std::move(queue.back());
        queue.pop_back();
        if (g.poly.size() < 3 || signed_area(g.poly) <= 0) continue;

        auto subs = gap_subs(g);
        std::size_t m = subs.size();
        std::set<int> owners;
        for (const Sub& s : subs)
            if (s.owner != kExteriorTag) owners.insert(s.owner);
        if (owners.empty()) {
            fail(out, "gap touches no unit");
            return out;
        }
        if (owners.size() == 1) {  // a single adjacent unit absorbs the gap
            out.pieces.push_back({std::move(g.poly), *owners.begin()});
            continue;
        }
        if (m == 2) {
            if (!fill_two(g, subs, out)) return out;
            continue;
        }
        if (!simplified) {
            for (auto& piece : convexify_all(g, subs, out.pieces))
                queue.push_back({std::move(piece), true});
            continue;
        }
        bool ok;
        if (m == 3) {
            bool has_ext = subs[0].owner == kExteriorTag || subs[1].owner == kExteriorTag ||
                           subs[2].owner == kExteriorTag;
            ok = has_ext ? fill_three_exterior(g, subs, out) : fill_three(g, subs, out);
        } else {
            ok = fill_many(g, subs, out, queue);
        }
        if (!ok) return out;
    }
    return out;
}

std::vector<ExtractedGap> extract_gaps(const RefinedTiling& rt, const AssignResult& assign) {
    EdgeFaceMap efm = edge_face_map(rt.faces);

    // edge-connected clusters of unassigned faces
    std::map<int, int> parent;
    for (std::size_t f = 0; f < rt.faces.size(); ++f)
        if (assign.owner[f] < 0) parent[static_cast<int>(f)] = static_cast<int>(f);
    std::function<int(int)> find = [&](int f) { return parent[f] == f ? f : parent[f] = find(parent[f]); };
    for (const auto& [e, fs] : efm) {
        int first = -1;
        for (int f : fs) {
            if (assign.owner[static_cast<std::size_t>(f)] >= 0) continue;
            if (first < 0)
                first = f;
            else
                parent[find(first)] = find(f);
        }
    }
    std::map<int, std::vector<int>> clusters;
    for (auto& [f, _] : parent) clusters[find(f)].push_back(f);

    std::vector<ExtractedGap> out;
    for (auto& [root, members] : clusters) {
        std::set<int> member_set(members.begin(), members.end());

        // boundary of the union: directed edges that do not cancel
        std::set<std::pair<VId, VId>> dir;
        auto toggle = [&](VId a, VId b) {
            auto rev = dir.find({b, a});
            if (rev != dir.end())
                dir.erase(rev);
            else
                dir.insert({a, b});
        };
        for (int f : members) {
            const Face& face = rt.faces[static_cast<std::size_t>(f)];
            for (std::size_t k = 0; k < face.outer.size(); ++k)
                toggle(face.outer[k], face.outer[(k + 1) % face.outer.size()]);
            for (const auto& hole : face.holes)
                for (std::size_t k = 0; k < hole.size(); ++k)
                    toggle(hole[k], hole[(k + 1) % hole.size()]);
        }

        std::vector<std::vector<VId>> pos_loops, neg_loops;
        for (auto& loop : trace_loops(rt.pool, dir)) {
            if (loop_area(rt.pool, loop) > 0)
                pos_loops.push_back(std::move(loop));
            else
                neg_loops.push_back(std::move(loop));
        }

        auto tag_loop = [&](const std::vector<VId>& loop, GapBoundary& gb,
                            std::vector<int>* adjacent) {
            gb.poly = loop_ring(rt.pool, loop);
            for (std::size_t k = 0; k < loop.size(); ++k) {
                VId a = loop[k], b = loop[(k + 1) % loop.size()];
                std::array<VId, 2> key{std::min(a, b), std::max(a, b)};
                int tag = kExteriorTag;
                auto it = efm.find(key);
                if (it != efm.end())
                    for (int f : it->second)
                        if (!member_set.count(f) && assign.owner[static_cast<std::size_t>(f)] >= 0)
                            tag = assign.owner[static_cast<std::size_t>(f)];
                gb.tags.push_back(tag);
                if (adjacent && tag >= 0) adjacent->push_back(tag);
            }
        };

        for (const auto& loop : pos_loops) {
            ExtractedGap gap;
            tag_loop(loop, gap.boundary, &gap.adjacent_units);
            gap.area = signed_area(gap.boundary.poly);
            std::sort(gap.adjacent_units.begin(), gap.adjacent_units.end());
            gap.adjacent_units.erase(
                std::unique(gap.adjacent_units.begin(), gap.adjacent_units.end()),
                gap.adjacent_units.end());
            for (const auto& hole : neg_loops) {
                if (point_in_ring(rt.pool[hole[0]], gap.boundary.poly) < 0) continue;
                GapBoundary hb;
                tag_loop(hole, hb, &gap.adjacent_units);
                std::sort(gap.adjacent_units.begin(), gap.adjacent_units.end());
                gap.adjacent_units.erase(
                    std::unique(gap.adjacent_units.begin(), gap.adjacent_units.end()),
                    gap.adjacent_units.end());
                gap.area += signed_area(hb.poly);  // negative
                gap.holes.push_back(std::move(hb));
            }
            for (int f : members)
                if (point_in_ring(rt.faces[static_cast<std::size_t>(f)].rep, gap.boundary.poly) == 1)
                    gap.faces.push_back(f);
            out.push_back(std::move(gap));
        }
    }
    return out;
}

std::vector<GapBoundary> split_gap_holes(const ExtractedGap& gap, std::string& reason) {
    constexpr int kCutSource = -3;
    const Ring& outer = gap.boundary.poly;

    double x0 = outer.pts[0].x, x1 = x0, y0 = outer.pts[0].y, y1 = y0;
    for (const Point& p : outer.pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    double diam = std::hypot(x1 - x0, y1 - y0);
    double scale = std::max({diam, std::abs(x0), std::abs(x1), std::abs(y0), std::abs(y1)});
    double margin = 0.1 * diam;

    struct Src {
        Segment seg;
        int tag;
    };
    std::vector<Src> sources;
    VertexPool pool(1e-12 * scale);
    std::vector<std::array<VId, 2>> edges;
    auto add_boundary = [&](const GapBoundary& gb) {
        for (std::size_t k = 0; k < gb.poly.size(); ++k) {
            Segment s{gb.poly.at(k), gb.poly.at(k + 1)};
            edges.push_back({pool.add(s.a), pool.add(s.b)});
            sources.push_back({s, gb.tags[k]});
        }
    };
    add_boundary(gap.boundary);
    for (const GapBoundary& h : gap.holes) add_boundary(h);
    // a cross through each hole breaks every gap cycle around it
    for (const GapBoundary& h : gap.holes) {
        Point c = centroid(h.poly);
        Segment hor{{x0 - margin, c.y}, {x1 + margin, c.y}};
        Segment ver{{c.x, y0 - margin}, {c.x, y1 + margin}};
        for (const Segment& s : {hor, ver}) {
            edges.push_back({pool.add(s.a), pool.add(s.b)});
            sources.push_back({s, kCutSource});
        }
    }
    node_edges(pool, edges);
    std::vector<Face> faces = polygonize(pool, edges);
    EdgeFaceMap efm = edge_face_map(faces);

    double eps = std::max(8e-12 * scale, 1e-14 * scale);
    auto on_source = [&](Point a, Point b, const Segment& s) {
        return point_segment_distance(a, s) <= eps && point_segment_distance(b, s) <= eps &&
               point_segment_distance(0.5 * (a + b), s) <= eps;
    };
    // per noded edge: boundary tag if it lies on the gap boundary, else cut
    std::map<std::array<VId, 2>, int> edge_tag;
    for (const auto& e : edges) {
        std::array<VId, 2> key{std::min(e[0], e[1]), std::max(e[0], e[1])};
        Point a = pool[e[0]], b = pool[e[1]];
        int tag = kNoSource;
        for (const Src& s : sources) {
            if (!on_source(a, b, s.seg)) continue;
            if (s.tag == kCutSource) {
                if (tag == kNoSource) tag = kCutSource;
            } else if (tag == kNoSource || tag == kCutSource) {
                tag = s.tag;
            }
        }
        edge_tag[key] = tag;
    }

    // faces inside the gap region, clustered across non-cut edges
    std::vector<char> inside(faces.size(), 0);
    std::vector<int> parent(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        parent[f] = static_cast<int>(f);
        Point rep = faces[f].rep;
        if (point_in_ring(rep, outer) != 1) continue;
        bool in_hole = false;
        for (const GapBoundary& h : gap.holes)
            if (point_in_ring(rep, h.poly) >= 0) in_hole = true;
        inside[f] = !in_hole;
    }
    std::function<int(int)> find = [&](int f) {
        return parent[static_cast<std::size_t>(f)] == f
                   ? f
                   : parent[static_cast<std::size_t>(f)] = find(parent[static_cast<std::size_t>(f)]);
    };
    for (const auto& [key, fs] : efm) {
        auto it = edge_tag.find(key);
        if (it == edge_tag.end() || it->second == kCutSource) continue;
        int first = -1;
        for (int f : fs) {
            if (!inside[static_cast<std::size_t>(f)]) continue;
            if (first < 0)
                first = f;
            else
                parent[find(first)] = find(f);
        }
    }

    std::map<int, std::vector<int>> clusters;
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (inside[f]) clusters[find(static_cast<int>(f))].push_back(static_cast<int>(f));

    std::vector<GapBoundary> out;
    for (const auto& [root, members] : clusters) {
        std::set<std::pair<VId, VId>> dir;
        auto toggle = [&](VId a, VId b) {
            auto rev = dir.find({b, a});
            if (rev != dir.end())
                dir.erase(rev);
            else
                dir.insert({a, b});
        };
        for (int f : members) {
            const Face& face = faces[static_cast<std::size_t>(f)];
            for (std::size_t k = 0; k < face.outer.size(); ++k)
                toggle(face.outer[k], face.outer[(k + 1) % face.outer.size()]);
            for (const auto& hole : face.holes)
                for (std::size_t k = 0; k < hole.size(); ++k)
                    toggle(hole[k], hole[(k + 1) % hole.size()]);
        }
        std::vector<std::vector<VId>> loops = trace_loops(pool, dir);
        std::vector<VId>* pos = nullptr;
        for (auto& loop : loops) {
            if (loop_area(pool, loop) > 0) {
                if (pos) {
                    reason = "gap piece is not connected after cutting";
                    return {};
                }
                pos = &loop;
            } else {
                reason = "gap piece still has a hole after cutting";
                return {};
            }
        }
        if (!pos) continue;
        GapBoundary gb;
        gb.poly = loop_ring(pool, *pos);
        for (std::size_t k = 0; k < pos->size(); ++k) {
            VId a = (*pos)[k], b = (*pos)[(k + 1) % pos->size()];
            std::array<VId, 2> key{std::min(a, b), std::max(a, b)};
            auto it = edge_tag.find(key);
            int tag = it == edge_tag.end() ? kNoSource : it->second;
            if (tag == kNoSource) {
                reason = "untraceable edge while cutting the gap";
                return {};
            }
            gb.tags.push_back(tag == kCutSource ? kExteriorTag : tag);
        }
        out.push_back(std::move(gb));
    }
    if (out.empty()) reason = "gap vanished while cutting";
    return out;
}

std::vector<GapBoundary> split_pinches(const GapBoundary& g) {
    std::vector<GapBoundary> out;
    std::vector<GapBoundary> work{g};
    while (!work.empty()) {
        GapBoundary cur = std::move(work.back());
        work.pop_back();
        std::size_t n = cur.poly.size();
        std::map<std::pair<double, double>, std::size_t> first;
        bool split = false;
        for (std::size_t k = 0; k < n && !split; ++k) {
            auto key = std::make_pair(cur.poly.pts[k].x, cur.poly.pts[k].y);
            auto it = first.find(key);
            if (it == first.end()) {
                first.emplace(key, k);
                continue;
            }
            // the loop touches itself at pts[i] == pts[k]; cut it there
            std::size_t i = it->second;
            GapBoundary a, b;
            for (std::size_t m = i; m < k; ++m) {
                a.poly.pts.push_back(cur.poly.pts[m]);
                a.tags.push_back(cur.tags[m]);
            }
            for (std::size_t m = k; m < n; ++m) {
                b.poly.pts.push_back(cur.poly.pts[m]);
                b.tags.push_back(cur.tags[m]);
            }
            for (std::size_t m = 0; m < i; ++m) {
                b.poly.pts.push_back(cur.poly.pts[m]);
                b.tags.push_back(cur.tags[m]);
            }
            work.push_back(std::move(a));
            work.push_back(std::move(b));
            split = true;
        }
        if (!split && n >= 3 && signed_area(cur.poly) != 0.0) out.push_back(std::move(cur));
    }
    return out;
}

}  // namespace tilerepair
