#include "tilerepair/assign.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tilerepair {

namespace {

double edge_length(const VertexPool& pool, const std::array<VId, 2>& e) {
    return dist(pool[e[0]], pool[e[1]]);
}

// number of edge-connected components among the faces assigned to one unit
int component_count(const std::vector<int>& faces, const EdgeFaceMap& efm,
                    const std::vector<Face>& all_faces) {
    if (faces.empty()) return 0;
    std::map<int, int> comp;
    for (int f : faces) comp[f] = f;
    std::function<int(int)> find = [&](int f) {
        return comp[f] == f ? f : comp[f] = find(comp[f]);
    };
    for (int f : faces)
        for (const auto& e : face_boundary_edges(all_faces[static_cast<std::size_t>(f)])) {
            auto it = efm.find(e);
            if (it == efm.end()) continue;
            for (int g : it->second)
                if (comp.count(g)) comp[find(f)] = find(g);
        }
    std::set<int> roots;
    for (int f : faces) roots.insert(find(f));
    return static_cast<int>(roots.size());
}

}  // namespace

AssignResult assign_pieces(const std::vector<Unit>& units, const RefinedTiling& rt) {
    AssignResult res;
    res.owner.assign(rt.faces.size(), -1);
    EdgeFaceMap efm = edge_face_map(rt.faces);

    std::size_t max_order = 1;
    for (const auto& s : rt.owner_sets) max_order = std::max(max_order, s.size());

    // unit indices in ascending id order, for deterministic tie-breaks
    std::vector<int> by_id(units.size());
    std::iota(by_id.begin(), by_id.end(), 0);
    std::sort(by_id.begin(), by_id.end(),
              [&](int a, int b) { return units[static_cast<std::size_t>(a)].id < units[static_cast<std::size_t>(b)].id; });
    auto id_less = [&](int a, int b) {
        return units[static_cast<std::size_t>(a)].id < units[static_cast<std::size_t>(b)].id;
    };

    std::vector<std::vector<int>> unit_faces(units.size());
    auto claim = [&](int face, int unit) {
        res.owner[static_cast<std::size_t>(face)] = unit;
        unit_faces[static_cast<std::size_t>(unit)].push_back(face);
    };

    // order-1 pieces
    for (std::size_t f = 0; f < rt.faces.size(); ++f)
        if (rt.owner_sets[f].size() == 1) claim(static_cast<int>(f), rt.owner_sets[f][0]);

    auto disconnected_units = [&] {
        std::vector<int> out;
        for (int u : by_id)
            if (component_count(unit_faces[static_cast<std::size_t>(u)], efm, rt.faces) > 1)
                out.push_back(u);
        return out;
    };
    std::vector<int> disconnected = disconnected_units();

    // perimeter the face shares with the current geometry of a unit
    auto shared_with = [&](int face, int unit) {
        double len = 0.0;
        for (const auto& e : face_boundary_edges(rt.faces[static_cast<std::size_t>(face)])) {
            auto it = efm.find(e);
            if (it == efm.end()) continue;
            for (int g : it->second)
                if (g != face && res.owner[static_cast<std::size_t>(g)] == unit)
                    len += edge_length(rt.pool, e);
        }
        return len;
    };

    for (std::size_t d = 2; d <= max_order; ++d) {
        std::vector<int> batch;
        for (std::size_t f = 0; f < rt.faces.size(); ++f)
            if (rt.owner_sets[f].size() == d) batch.push_back(static_cast<int>(f));
        if (batch.empty()) continue;

        // (1) connectivity first: each disconnected unit claims the order-d
        // overlaps lying inside its original polygon, in ascending id order
        for (int u : disconnected) {
            for (int f : batch) {
                if (res.owner[static_cast<std::size_t>(f)] >= 0) continue;
                const auto& own = rt.owner_sets[static_cast<std::size_t>(f)];
                if (std::find(own.begin(), own.end(), u) != own.end()) claim(f, u);
            }
        }

        // (2) remaining overlaps: largest shared perimeter, ties to smallest id
        for (int f : batch) {
            if (res.owner[static_cast<std::size_t>(f)] >= 0) continue;
            const auto& own = rt.owner_sets[static_cast<std::size_t>(f)];
            int best = -1;
            double best_len = -1.0;
            for (int u : own) {
                double len = shared_with(f, u);
                if (len > best_len || (len == best_len && best >= 0 && id_less(u, best))) {
                    best = u;
                    best_len = len;
                }
            }
            claim(f, best);
        }

        disconnected = disconnected_units();
    }

    for (int u : disconnected) res.disconnected.push_back(units[static_cast<std::size_t>(u)].id);
    return res;
}

double shared_perimeter(const std::vector<Ring>& a, const std::vector<Ring>& b) {
    // collect maximal overlap intervals per undirected supporting line to
    // avoid double counting collinear duplicates
    std::vector<Segment> pieces;
    for (const Ring& ra : a)
        for (std::size_t i = 0; i < ra.size(); ++i) {
            Segment sa{ra.at(i), ra.at(i + 1)};
            for (const Ring& rb : b)
                for (std::size_t j = 0; j < rb.size(); ++j) {
                    auto x = segment_intersection(sa, {rb.at(j), rb.at(j + 1)});
                    if (x.kind == SegIntersection::Kind::Overlap && x.sub.a != x.sub.b)
                        pieces.push_back(x.sub);
                }
        }
    // merge duplicates exactly: canonical endpoint order, unique
    for (auto& s : pieces)
        if (s.b.x < s.a.x || (s.b.x == s.a.x && s.b.y < s.a.y)) std::swap(s.a, s.b);
    std::sort(pieces.begin(), pieces.end(), [](const Segment& s, const Segment& t) {
        if (s.a.x != t.a.x) return s.a.x < t.a.x;
        if (s.a.y != t.a.y) return s.a.y < t.a.y;
        if (s.b.x != t.b.x) return s.b.x < t.b.x;
        return s.b.y < t.b.y;
    });
    pieces.erase(std::unique(pieces.begin(), pieces.end(),
                             [](const Segment& s, const Segment& t) {
                                 return s.a == t.a && s.b == t.b;
                             }),
                 pieces.end());
    double len = 0.0;
    for (const Segment& s : pieces) len += dist(s.a, s.b);
    return len;
}

}  // namespace tilerepair
