#include "tilerepair/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "tilerepair/assign.hpp"
#include "tilerepair/gapfill.hpp"

namespace tilerepair {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void set_unit_geometry(Unit& u, std::vector<Ring> outers, std::vector<Ring> holes,
                       double snap_tol) {
    // cut walls from gap splitting introduce T-vertices on assigned-face
    // edges, so assembly must merge with noding, not exact matching
    MergedRegion merged = merge_rings_noded(outers, holes, snap_tol);
    u.outers = std::move(merged.outers);
    u.holes = std::move(merged.holes);
}

// Wall-off cuts toward the exterior pick the closest exterior *vertex*, but
// a hull chord has none near the units; insert the perpendicular projections
// of the gap's unit vertices onto each exterior edge so cuts can land there.
GapBoundary densify_exterior(const GapBoundary& g) {
    std::size_t n = g.poly.size();
    std::vector<Point> unit_verts;
    for (std::size_t k = 0; k < n; ++k)
        if (g.tags[k] != kExteriorTag || g.tags[(k + n - 1) % n] != kExteriorTag)
            unit_verts.push_back(g.poly.pts[k]);

    GapBoundary out;
    for (std::size_t k = 0; k < n; ++k) {
        Point a = g.poly.at(k), b = g.poly.at(k + 1);
        out.poly.pts.push_back(a);
        out.tags.push_back(g.tags[k]);
        if (g.tags[k] != kExteriorTag) continue;
        double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
        if (len2 <= 0) continue;
        std::vector<double> ts;
        for (const Point& v : unit_verts) {
            double t = ((v.x - a.x) * (b.x - a.x) + (v.y - a.y) * (b.y - a.y)) / len2;
            if (t > 1e-9 && t < 1.0 - 1e-9) ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        double last = 0.0;
        for (double t : ts) {
            if (t - last < 1e-9) continue;
            last = t;
            out.poly.pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            out.tags.push_back(kExteriorTag);
        }
    }
    return out;
}

// core repair of one unit list against an exterior boundary (region rings,
// or the input's convex hull in plain mode); fills `out_units` with repaired
// geometry.  With `fringe_optional`, gap regions touching the exterior ring
// are only defects (and only get filled) when they separate a pair of
// adjacent units that share no boundary anywhere else -- harmless notches
// along the hull are left open.
void repair_core(const std::vector<Unit>& units, const std::vector<Ring>& exterior_rings,
                 bool fringe_optional, const RepairOptions& opts, double snap_tol,
                 std::vector<Unit>& out_units, RepairReport& report) {
    auto t0 = Clock::now();
    RefinedTiling rt = refine(units, exterior_rings, snap_tol);
    report.timings_ms["refine"] += ms_since(t0);

    t0 = Clock::now();
    AssignResult assign = assign_pieces(units, rt);
    for (const auto& own : rt.owner_sets)
        if (own.size() >= 2) ++report.overlap_pieces;
    report.timings_ms["assign"] += ms_since(t0);

    t0 = Clock::now();
    std::vector<double> unit_area(units.size(), 0.0);
    for (std::size_t f = 0; f < rt.faces.size(); ++f)
        if (assign.owner[f] >= 0) unit_area[static_cast<std::size_t>(assign.owner[f])] += rt.faces[f].area;

    std::vector<std::vector<Ring>> fill_rings(units.size());
    auto gaps = extract_gaps(rt, assign);
    // unit pairs already sharing an edge in the assigned tiling; used to
    // decide whether a fringe gap actually separates anyone
    std::set<std::pair<int, int>> touching;
    if (fringe_optional) {
        EdgeFaceMap efm = edge_face_map(rt.faces);
        for (const auto& [e, fs] : efm) {
            std::set<int> us;
            for (int f : fs)
                if (assign.owner[static_cast<std::size_t>(f)] >= 0)
                    us.insert(assign.owner[static_cast<std::size_t>(f)]);
            if (us.size() == 2) touching.insert({*us.begin(), *std::next(us.begin())});
        }
    }
    // largest gaps first; ties broken by the smallest adjacent unit id
    std::sort(gaps.begin(), gaps.end(), [&](const ExtractedGap& a, const ExtractedGap& b) {
        if (a.area != b.area) return a.area > b.area;
        std::string ia = a.adjacent_units.empty() ? "" : units[static_cast<std::size_t>(a.adjacent_units[0])].id;
        std::string ib = b.adjacent_units.empty() ? "" : units[static_cast<std::size_t>(b.adjacent_units[0])].id;
        return ia < ib;
    });
    for (const ExtractedGap& gap : gaps) {
        if (fringe_optional) {
            bool fringe = false;
            for (int t : gap.boundary.tags)
                if (t == kExteriorTag) fringe = true;
            if (fringe) {
                bool separating = false;
                for (std::size_t i = 0; i < gap.adjacent_units.size(); ++i)
                    for (std::size_t j = i + 1; j < gap.adjacent_units.size(); ++j) {
                        int a = gap.adjacent_units[i], b = gap.adjacent_units[j];
                        if (!touching.count({std::min(a, b), std::max(a, b)})) separating = true;
                    }
                if (!separating) continue;  // harmless notch along the hull
            }
        }
        ++report.gap_regions;
        if (!opts.fill_gaps) {
            report.unfilled.push_back({gap.boundary.poly, gap.area, "gap filling disabled"});
            continue;
        }
        double largest_adjacent = 0.0;
        for (int u : gap.adjacent_units)
            largest_adjacent = std::max(largest_adjacent, unit_area[static_cast<std::size_t>(u)]);
        if (largest_adjacent > 0 && gap.area > opts.gap_area_threshold * largest_adjacent) {
            report.unfilled.push_back({gap.boundary.poly, gap.area, "gap exceeds the area threshold"});
            continue;
        }
        // the traced boundary can be pinched where the crack network narrows
        // to a point: counterclockwise lobes are separate gap components,
        // clockwise lobes are islands the gap wraps around (holes touching
        // the outer boundary at a single vertex)
        std::vector<GapBoundary> lobes, islands;
        for (GapBoundary& l : split_pinches(gap.boundary))
            (signed_area(l.poly) > 0 ? lobes : islands).push_back(std::move(l));
        for (const GapBoundary& h : gap.holes)
            for (GapBoundary& l : split_pinches(h)) islands.push_back(std::move(l));

        // a lobe surrounding islands (annulus) is cut into simply connected
        // pieces first; the cut edges act as walls the pieces fill up to
        std::vector<GapBoundary> pieces;
        bool failed = false;
        for (GapBoundary& lobe : lobes) {
            ExtractedGap sub;
            sub.boundary = std::move(lobe);
            for (const GapBoundary& isl : islands) {
                int side = 0;
                for (const Point& p : isl.poly.pts)
                    if ((side = point_in_ring(p, sub.boundary.poly)) != 0) break;
                if (side > 0) sub.holes.push_back(isl);
            }
            if (sub.holes.empty()) {
                pieces.push_back(std::move(sub.boundary));
                continue;
            }
            std::string why;
            std::vector<GapBoundary> cut = split_gap_holes(sub, why);
            if (cut.empty()) {
                report.unfilled.push_back({sub.boundary.poly, gap.area, why});
                failed = true;
                break;
            }
            // a cut piece can itself be pinched where cut lines meet the
            // boundary; a clockwise lobe at this stage means a hole survived
            for (GapBoundary& c : cut)
                for (GapBoundary& s : split_pinches(c)) {
                    if (signed_area(s.poly) < 0) {
                        report.unfilled.push_back(
                            {sub.boundary.poly, gap.area, "gap piece still has a hole after cutting"});
                        failed = true;
                        break;
                    }
                    pieces.push_back(std::move(s));
                }
            if (failed) break;
        }
        if (failed) continue;
        bool all_filled = true;
        for (const GapBoundary& piece : pieces) {
            // only hull chords and cut walls may gain vertices; region
            // boundaries are shared with neighbors and keep their vertex set
            bool densify = false;
            if (fringe_optional || !gap.holes.empty())
                for (int t : piece.tags)
                    if (t == kExteriorTag) densify = true;
            FillResult res = fill_gap(densify ? densify_exterior(piece) : piece);
            if (!res.filled) {
                report.unfilled.push_back({piece.poly, signed_area(piece.poly), res.reason});
                all_filled = false;
                continue;
            }
            for (auto& fp : res.pieces)
                fill_rings[static_cast<std::size_t>(fp.owner)].push_back(std::move(fp.region));
        }
        if (all_filled) ++report.filled_gaps;
    }
    report.timings_ms["fill"] += ms_since(t0);

    t0 = Clock::now();
    std::vector<Unit> repaired = units;
    for (std::size_t u = 0; u < units.size(); ++u) {
        std::vector<Ring> outers = std::move(fill_rings[u]), holes;
        for (std::size_t f = 0; f < rt.faces.size(); ++f) {
            if (assign.owner[f] != static_cast<int>(u)) continue;
            outers.push_back(loop_ring(rt.pool, rt.faces[f].outer));
            for (const auto& h : rt.faces[f].holes) holes.push_back(loop_ring(rt.pool, h));
        }
        set_unit_geometry(repaired[u], std::move(outers), std::move(holes), snap_tol);
    }
    report.timings_ms["assemble"] += ms_since(t0);

    t0 = Clock::now();
    repaired = reconnect_orphans(std::move(repaired), opts.orphan, &report.disconnected);
    report.timings_ms["orphans"] += ms_since(t0);

    if (opts.queen_length_threshold > 0) {
        t0 = Clock::now();
        QueenConversion conv;
        conv.length_threshold = opts.queen_length_threshold;
        repaired = rook_to_queen(std::move(repaired), conv, &report.warnings);
        report.timings_ms["queen"] += ms_since(t0);
    }
    for (auto& u : repaired) out_units.push_back(std::move(u));
}

}  // namespace

RepairResult smart_repair(const std::vector<Unit>& units, const RepairOptions& opts) {
    if (units.empty()) throw std::runtime_error("smart_repair: no input units");
    RepairResult result;
    result.report.input_units = static_cast<int>(units.size());
    double tol = opts.snap_tol >= 0 ? opts.snap_tol : default_snap_tol(units);
    // the convex hull closes off fringe gap regions that would otherwise
    // leak into the unbounded face and never be seen as gaps
    std::vector<Ring> hull_ring;
    {
        std::vector<Point> all;
        for (const Unit& u : units)
            for (const Ring& r : u.outers)
                for (Point p : r.pts) all.push_back(p);
        auto hull = convex_hull(all);
        if (hull.size() >= 3) {
            Ring hr;
            for (std::size_t i : hull) hr.pts.push_back(all[i]);
            hull_ring.push_back(std::move(hr));
        }
    }
    repair_core(units, hull_ring, true, opts, tol, result.units, result.report);
    auto t0 = Clock::now();
    result.adjacency = adjacency_graph(result.units);
    result.report.timings_ms["adjacency"] += ms_since(t0);
    return result;
}

RepairResult smart_repair_region_aware(const std::vector<Unit>& units,
                                       const std::vector<Unit>& regions,
                                       const RepairOptions& opts) {
    if (units.empty()) throw std::runtime_error("smart_repair: no input units");
    if (regions.empty()) throw std::runtime_error("smart_repair: no regions");
    RepairResult result;
    result.report.input_units = static_cast<int>(units.size());
    double tol = opts.snap_tol >= 0 ? opts.snap_tol : default_snap_tol(units);

    // one arrangement over units and regions gives all intersection areas
    std::vector<Unit> combined = units;
    combined.insert(combined.end(), regions.begin(), regions.end());
    RefinedTiling rt = refine(combined, {}, tol);
    std::size_t nu = units.size();
    std::vector<std::vector<double>> overlap(nu, std::vector<double>(regions.size(), 0.0));
    for (std::size_t f = 0; f < rt.faces.size(); ++f) {
        std::vector<int> us, rs;
        for (int o : rt.owner_sets[f])
            (static_cast<std::size_t>(o) < nu ? us : rs).push_back(o);
        for (int u : us)
            for (int r : rs)
                overlap[static_cast<std::size_t>(u)][static_cast<std::size_t>(r) - nu] +=
                    rt.faces[f].area;
    }
    std::vector<int> region_of(nu, -1);
    for (std::size_t u = 0; u < nu; ++u) {
        double best = 0;
        for (std::size_t r = 0; r < regions.size(); ++r)
            if (overlap[u][r] > best) {
                best = overlap[u][r];
                region_of[u] = static_cast<int>(r);
            }
        if (region_of[u] < 0)
            throw std::runtime_error("unit " + units[u].id + " intersects no region");
    }

    // clip each unit to its region and repair one region at a time
    std::vector<Unit> out;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        std::vector<Unit> members;
        for (std::size_t u = 0; u < nu; ++u) {
            if (region_of[u] != static_cast<int>(r)) continue;
            Unit clipped = units[u];
            std::vector<Ring> outers, holes;
            for (std::size_t f = 0; f < rt.faces.size(); ++f) {
                const auto& own = rt.owner_sets[f];
                bool in_u = std::find(own.begin(), own.end(), static_cast<int>(u)) != own.end();
                bool in_r = std::find(own.begin(), own.end(), static_cast<int>(nu + r)) != own.end();
                if (!in_u || !in_r) continue;
                outers.push_back(loop_ring(rt.pool, rt.faces[f].outer));
                for (const auto& h : rt.faces[f].holes) holes.push_back(loop_ring(rt.pool, h));
            }
            set_unit_geometry(clipped, std::move(outers), std::move(holes), tol);
            if (!clipped.outers.empty()) members.push_back(std::move(clipped));
        }
        if (members.empty()) continue;
        std::vector<Ring> exterior = regions[r].outers;
        exterior.insert(exterior.end(), regions[r].holes.begin(), regions[r].holes.end());
        repair_core(members, exterior, false, opts, tol, out, result.report);
    }

    // restore the input order
    std::map<std::string, std::size_t> order;
    for (std::size_t u = 0; u < nu; ++u) order[units[u].id] = u;
    std::sort(out.begin(), out.end(),
              [&](const Unit& a, const Unit& b) { return order[a.id] < order[b.id]; });
    result.units = std::move(out);
    result.adjacency = adjacency_graph(result.units);
    return result;
}

std::vector<Unit> quick_repair(const std::vector<Unit>& units) {
    if (units.empty()) return {};
    RefinedTiling rt = refine(units, {}, default_snap_tol(units));
    EdgeFaceMap efm = edge_face_map(rt.faces);

    auto id_less = [&](int a, int b) {
        return units[static_cast<std::size_t>(a)].id < units[static_cast<std::size_t>(b)].id;
    };
    std::vector<int> owner(rt.faces.size(), -1);
    for (std::size_t f = 0; f < rt.faces.size(); ++f) {
        const auto& own = rt.owner_sets[f];
        if (own.size() == 1) {
            owner[f] = own[0];
            continue;
        }
        // candidates: units whose membership changes across some boundary edge
        std::set<int> cands(own.begin(), own.end());
        for (const auto& e : face_boundary_edges(rt.faces[f])) {
            auto it = efm.find(e);
            if (it == efm.end()) continue;
            for (int g : it->second)
                for (int u : rt.owner_sets[static_cast<std::size_t>(g)]) cands.insert(u);
        }
        int best = -1;
        double best_len = -1;
        for (int u : cands) {
            // length of this piece's boundary lying on u's original boundary:
            // edges across which membership in u flips
            double len = 0;
            bool in_u = std::find(own.begin(), own.end(), u) != own.end();
            for (const auto& e : face_boundary_edges(rt.faces[f])) {
                auto it = efm.find(e);
                bool out_u = false;
                if (it != efm.end())
                    for (int g : it->second) {
                        if (g == static_cast<int>(f)) continue;
                        const auto& other = rt.owner_sets[static_cast<std::size_t>(g)];
                        out_u = std::find(other.begin(), other.end(), u) != other.end();
                    }
                if (in_u != out_u) len += dist(rt.pool[e[0]], rt.pool[e[1]]);
            }
            if (len > best_len || (len == best_len && best >= 0 && id_less(u, best))) {
                best = u;
                best_len = len;
            }
        }
        owner[f] = best;
    }

    std::vector<Unit> out = units;
    for (std::size_t u = 0; u < units.size(); ++u) {
        std::vector<Ring> outers, holes;
        for (std::size_t f = 0; f < rt.faces.size(); ++f) {
            if (owner[f] != static_cast<int>(u)) continue;
            outers.push_back(loop_ring(rt.pool, rt.faces[f].outer));
            for (const auto& h : rt.faces[f].holes) holes.push_back(loop_ring(rt.pool, h));
        }
        set_unit_geometry(out[u], std::move(outers), std::move(holes), rt.pool.tol());
    }
    return out;
}

AdjacencyGraph adjacency_graph(const std::vector<Unit>& units) {
    RefinedTiling rt = refine(units, {}, default_snap_tol(units));
    for (const auto& own : rt.owner_sets)
        if (own.size() >= 2)
            throw std::runtime_error("adjacency_graph: input tiling has overlaps");
    EdgeFaceMap efm = edge_face_map(rt.faces);
    std::vector<int> owner(rt.faces.size(), -1);
    for (std::size_t f = 0; f < rt.faces.size(); ++f)
        if (!rt.owner_sets[f].empty()) owner[f] = rt.owner_sets[f][0];

    std::map<std::pair<int, int>, double> rook;
    for (const auto& [e, fs] : efm) {
        std::set<int> us;
        for (int f : fs)
            if (owner[static_cast<std::size_t>(f)] >= 0) us.insert(owner[static_cast<std::size_t>(f)]);
        if (us.size() == 2)
            rook[{*us.begin(), *std::next(us.begin())}] += dist(rt.pool[e[0]], rt.pool[e[1]]);
    }

    // queen contacts: shared vertex between units with no shared edge length
    std::map<VId, std::set<int>> at_vertex;
    for (std::size_t f = 0; f < rt.faces.size(); ++f) {
        if (owner[f] < 0) continue;
        for (VId v : rt.faces[f].outer) at_vertex[v].insert(owner[f]);
        for (const auto& h : rt.faces[f].holes)
            for (VId v : h) at_vertex[v].insert(owner[f]);
    }
    std::set<std::pair<int, int>> queen;
    for (const auto& [v, us] : at_vertex)
        for (auto a = us.begin(); a != us.end(); ++a)
            for (auto b = std::next(a); b != us.end(); ++b)
                if (!rook.count({*a, *b})) queen.insert({*a, *b});

    AdjacencyGraph graph;
    for (const auto& [pr, len] : rook) {
        AdjacencyEdge e;
        e.a = units[static_cast<std::size_t>(pr.first)].id;
        e.b = units[static_cast<std::size_t>(pr.second)].id;
        if (e.b < e.a) std::swap(e.a, e.b);
        e.shared_length = len;
        graph.edges.push_back(std::move(e));
    }
    for (const auto& pr : queen) {
        AdjacencyEdge e;
        e.a = units[static_cast<std::size_t>(pr.first)].id;
        e.b = units[static_cast<std::size_t>(pr.second)].id;
        if (e.b < e.a) std::swap(e.a, e.b);
        e.queen = true;
        graph.edges.push_back(std::move(e));
    }
    std::sort(graph.edges.begin(), graph.edges.end(), [](const AdjacencyEdge& x, const AdjacencyEdge& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return graph;
}

}  // namespace tilerepair
