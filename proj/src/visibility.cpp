#include "tilerepair/visibility.hpp"

#include <algorithm>
#include <set>

namespace tilerepair {

bool arcs_adjacent(const Ring& gap, const ArcPair& pair) {
    auto ai = boundary_arc(gap, pair.i0, pair.i1);
    auto aj = boundary_arc(gap, pair.j0, pair.j1);
    std::set<std::size_t> si(ai.begin(), ai.end());
    for (std::size_t v : aj)
        if (si.count(v)) return true;
    return false;
}

bool paths_disjoint(const Ring& poly, const std::vector<std::size_t>& p1,
                    const std::vector<std::size_t>& p2) {
    std::set<std::size_t> s1(p1.begin(), p1.end());
    for (std::size_t v : p2)
        if (s1.count(v)) return false;
    for (std::size_t a = 0; a + 1 < p1.size(); ++a) {
        Segment sa{poly.pts[p1[a]], poly.pts[p1[a + 1]]};
        for (std::size_t b = 0; b + 1 < p2.size(); ++b) {
            Segment sb{poly.pts[p2[b]], poly.pts[p2[b + 1]]};
            if (segment_intersection(sa, sb).kind != SegIntersection::Kind::Empty) return false;
        }
    }
    return true;
}

bool strongly_mutually_visible(const Ring& gap, const Triangulation& tn, const ArcPair& pair) {
    if (arcs_adjacent(gap, pair))
        throw std::invalid_argument("strongly_mutually_visible: arcs are adjacent");
    auto a1 = shortest_path(gap, tn, pair.i1, pair.j0);
    auto a2 = shortest_path(gap, tn, pair.j1, pair.i0);
    return paths_disjoint(gap, a1, a2);
}

bool strongly_mutually_visible(const Ring& gap, const ArcPair& pair) {
    return strongly_mutually_visible(gap, build_triangulation(gap), pair);
}

double pair_distance(const Ring& gap, const ArcPair& pair) {
    auto ai = boundary_arc(gap, pair.i0, pair.i1);
    auto aj = boundary_arc(gap, pair.j0, pair.j1);
    auto segs = [&](const std::vector<std::size_t>& arc) {
        std::vector<Segment> out;
        if (arc.size() == 1) out.push_back({gap.pts[arc[0]], gap.pts[arc[0]]});
        for (std::size_t k = 0; k + 1 < arc.size(); ++k)
            out.push_back({gap.pts[arc[k]], gap.pts[arc[k + 1]]});
        return out;
    };
    double best = 1e300;
    for (const Segment& a : segs(ai))
        for (const Segment& b : segs(aj)) best = std::min(best, segment_distance(a, b));
    return best;
}

Bridge build_bridge(const Ring& gap, const Triangulation& tn, const ArcPair& pair) {
    Bridge br;
    br.beta1 = shortest_path(gap, tn, pair.i0, pair.j0);
    br.beta2 = shortest_path(gap, tn, pair.i1, pair.j1);

    // the diagonals intersect in exactly one point: either a shared polygon
    // vertex (both chains pass through it) or a transverse edge crossing
    std::set<std::size_t> shared;
    {
        std::set<std::size_t> s1(br.beta1.begin(), br.beta1.end());
        for (std::size_t v : br.beta2)
            if (s1.count(v)) shared.insert(v);
    }
    std::vector<Point> crossings;
    for (std::size_t a = 0; a + 1 < br.beta1.size(); ++a) {
        Segment sa{gap.pts[br.beta1[a]], gap.pts[br.beta1[a + 1]]};
        for (std::size_t b = 0; b + 1 < br.beta2.size(); ++b) {
            Segment sb{gap.pts[br.beta2[b]], gap.pts[br.beta2[b + 1]]};
            auto x = segment_intersection(sa, sb);
            if (x.kind == SegIntersection::Kind::Overlap)
                throw BridgeError("bridge diagonals overlap along a segment");
            if (x.kind == SegIntersection::Kind::AtPoint) {
                bool is_shared_vertex = false;
                for (std::size_t v : shared)
                    if (gap.pts[v] == x.p) is_shared_vertex = true;
                if (!is_shared_vertex) crossings.push_back(x.p);
            }
        }
    }
    std::sort(crossings.begin(), crossings.end(),
              [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());

    if (shared.size() + crossings.size() != 1)
        throw BridgeError("bridge diagonals do not cross in exactly one point");
    if (!shared.empty()) {
        br.crossing_at_vertex = true;
        br.crossing_vertex = *shared.begin();
        br.crossing = gap.pts[br.crossing_vertex];
    } else {
        br.crossing = crossings.front();
    }
    return br;
}

}  // namespace tilerepair
