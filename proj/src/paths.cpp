#include "tilerepair/paths.hpp"

#include "tilerepair/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tilerepair {

namespace {

bool point_in_tri_closed(Point p, Point a, Point b, Point c) {
    Orientation o1 = orientation(a, b, p);
    Orientation o2 = orientation(b, c, p);
    Orientation o3 = orientation(c, a, p);
    bool has_cw = o1 == Orientation::CW || o2 == Orientation::CW || o3 == Orientation::CW;
    bool has_ccw = o1 == Orientation::CCW || o2 == Orientation::CCW || o3 == Orientation::CCW;
    return !(has_cw && has_ccw);
}

}  // namespace

std::vector<Tri> triangulate(const Ring& poly) {
    std::size_t n = poly.size();
    if (n < 3) throw std::invalid_argument("triangulate: fewer than 3 vertices");
    if (signed_area(poly) < 0) throw std::invalid_argument("triangulate: ring not CCW");

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<Tri> tris;

    while (idx.size() > 3) {
        std::size_t m = idx.size();
        bool clipped = false;
        // strict ears first
        for (std::size_t i = 0; i < m && !clipped; ++i) {
            std::size_t ip = idx[(i + m - 1) % m], iv = idx[i], in = idx[(i + 1) % m];
            Point a = poly.pts[ip], b = poly.pts[iv], c = poly.pts[in];
            if (orientation(a, b, c) != Orientation::CCW) continue;
            bool blocked = false;
            for (std::size_t j = 0; j < m && !blocked; ++j) {
                std::size_t jv = idx[j];
                if (jv == ip || jv == iv || jv == in) continue;
                if (point_in_tri_closed(poly.pts[jv], a, b, c)) blocked = true;
            }
            if (blocked) continue;
            tris.push_back({ip, iv, in});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
        }
        if (clipped) continue;
        // fall back to clipping a collinear (zero-area) corner
        for (std::size_t i = 0; i < m && !clipped; ++i) {
            std::size_t ip = idx[(i + m - 1) % m], iv = idx[i], in = idx[(i + 1) % m];
            if (orientation(poly.pts[ip], poly.pts[iv], poly.pts[in]) == Orientation::Collinear) {
                tris.push_back({ip, iv, in});
                idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
                clipped = true;
            }
        }
        if (!clipped) throw std::runtime_error("triangulate: no ear found (non-simple input?)");
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

Triangulation build_triangulation(const Ring& poly) {
    Triangulation tn;
    tn.tris = triangulate(poly);
    tn.adj.assign(tn.tris.size(), {-1, -1, -1});
    std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> edge_owner;
    for (std::size_t t = 0; t < tn.tris.size(); ++t) {
        for (int e = 0; e < 3; ++e) {
            std::size_t u = tn.tris[t][static_cast<std::size_t>(e)];
            std::size_t w = tn.tris[t][static_cast<std::size_t>((e + 1) % 3)];
            auto key = std::minmax(u, w);
            auto it = edge_owner.find({key.first, key.second});
            if (it == edge_owner.end()) {
                edge_owner[{key.first, key.second}] = {static_cast<int>(t), e};
            } else {
                auto [t2, e2] = it->second;
                tn.adj[t][static_cast<std::size_t>(e)] = t2;
                tn.adj[static_cast<std::size_t>(t2)][static_cast<std::size_t>(e2)] =
                    static_cast<int>(t);
            }
        }
    }
    return tn;
}

namespace {

// Dual-tree path between triangles, as a triangle index sequence.
std::vector<int> dual_path(const Triangulation& tn, int start, int goal) {
    std::vector<int> parent(tn.tris.size(), -2);
    std::vector<int> queue{start};
    parent[static_cast<std::size_t>(start)] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int t = queue[qi];
        if (t == goal) break;
        for (int nb : tn.adj[static_cast<std::size_t>(t)]) {
            if (nb >= 0 && parent[static_cast<std::size_t>(nb)] == -2) {
                parent[static_cast<std::size_t>(nb)] = t;
                queue.push_back(nb);
            }
        }
    }
    std::vector<int> path;
    for (int t = goal; t != -1; t = parent[static_cast<std::size_t>(t)]) path.push_back(t);
    std::reverse(path.begin(), path.end());
    return path;
}

int sign_area2(const Ring& poly, std::size_t a, std::size_t b, std::size_t c) {
    return static_cast<int>(orientation(poly.pts[a], poly.pts[b], poly.pts[c]));
}

void canonicalize(const Ring& poly, std::vector<std::size_t>& path) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        std::size_t p = path[i], q = path[i + 1];
        out.push_back(p);
        Segment seg{poly.pts[p], poly.pts[q]};
        std::vector<std::size_t> on;
        for (std::size_t v = 0; v < poly.size(); ++v) {
            if (v == p || v == q) continue;
            if (poly.pts[v] == seg.a || poly.pts[v] == seg.b) continue;
            if (point_on_segment(poly.pts[v], seg)) on.push_back(v);
        }
        std::sort(on.begin(), on.end(), [&](std::size_t x, std::size_t y) {
            return dist(poly.pts[x], seg.a) < dist(poly.pts[y], seg.a);
        });
        for (std::size_t v : on) out.push_back(v);
    }
    out.push_back(path.back());
    // drop consecutive duplicates
    path.clear();
    for (std::size_t v : out)
        if (path.empty() || path.back() != v) path.push_back(v);
}

}  // namespace

std::vector<std::size_t> shortest_path(const Ring& poly, const Triangulation& tn,
                                       std::size_t a, std::size_t b) {
    if (a >= poly.size() || b >= poly.size())
        throw std::invalid_argument("shortest_path: endpoint is not a polygon vertex");
    if (a == b) throw std::invalid_argument("shortest_path: identical endpoints");

    int start = -1, goal = -1;
    for (std::size_t t = 0; t < tn.tris.size(); ++t) {
        const Tri& tr = tn.tris[t];
        bool has_a = tr[0] == a || tr[1] == a || tr[2] == a;
        bool has_b = tr[0] == b || tr[1] == b || tr[2] == b;
        if (has_a && start < 0) start = static_cast<int>(t);
        if (has_b && goal < 0) goal = static_cast<int>(t);
        if (has_a && has_b) { start = goal = static_cast<int>(t); break; }
    }

    std::vector<std::size_t> path{a};
    if (start != goal) {
        std::vector<int> tpath = dual_path(tn, start, goal);
        // portals: directed shared edge (u,w) in the earlier triangle's CCW
        // order gives left=w, right=u for travel into the next triangle
        std::vector<std::pair<std::size_t, std::size_t>> portals;  // (left, right)
        portals.emplace_back(a, a);
        for (std::size_t k = 0; k + 1 < tpath.size(); ++k) {
            int t = tpath[k], t2 = tpath[k + 1];
            for (int e = 0; e < 3; ++e) {
                if (tn.adj[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] == t2) {
                    std::size_t u = tn.tris[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
                    std::size_t w = tn.tris[static_cast<std::size_t>(t)][static_cast<std::size_t>((e + 1) % 3)];
                    portals.emplace_back(w, u);
                    break;
                }
            }
        }
        portals.emplace_back(b, b);

        // funnel: candidate narrows the right boundary when it is on or left
        // of apex->right; it crosses over when strictly left of apex->left
        std::size_t apex = a, left = a, right = a;
        std::size_t apex_i = 0, left_i = 0, right_i = 0;
        for (std::size_t i = 1; i < portals.size(); ++i) {
            auto [l, r] = portals[i];
            if (sign_area2(poly, apex, right, r) >= 0) {
                if (apex == right || sign_area2(poly, apex, left, r) <= 0) {
                    right = r;
                    right_i = i;
                } else {
                    if (path.back() != left) path.push_back(left);
                    apex = left;
                    apex_i = left_i;
                    left = right = apex;
                    left_i = right_i = apex_i;
                    i = apex_i;
                    continue;
                }
            }
            if (sign_area2(poly, apex, left, l) <= 0) {
                if (apex == left || sign_area2(poly, apex, right, l) >= 0) {
                    left = l;
                    left_i = i;
                } else {
                    if (path.back() != right) path.push_back(right);
                    apex = right;
                    apex_i = right_i;
                    left = right = apex;
                    left_i = right_i = apex_i;
                    i = apex_i;
                    continue;
                }
            }
        }
    }
    if (path.back() != b) path.push_back(b);
    canonicalize(poly, path);
    return path;
}

std::vector<std::size_t> shortest_path(const Ring& poly, std::size_t a, std::size_t b) {
    return shortest_path(poly, build_triangulation(poly), a, b);
}

double path_length(const Ring& poly, const std::vector<std::size_t>& path) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        len += dist(poly.pts[path[i]], poly.pts[path[i + 1]]);
    return len;
}

std::vector<std::size_t> boundary_arc(const Ring& poly, std::size_t i, std::size_t j) {
    std::vector<std::size_t> arc;
    std::size_t n = poly.size();
    for (std::size_t k = i;; k = (k + 1) % n) {
        arc.push_back(k);
        if (k == j) break;
    }
    return arc;
}

bool is_outward_convex(const Ring& poly, std::size_t i, std::size_t j) {
    auto arc = boundary_arc(poly, i, j);
    for (std::size_t k = 1; k + 1 < arc.size(); ++k)
        if (classify_vertex(poly, arc[k]) != VertexClass::Reflex) return false;
    return true;
}

ConvexifyResult convexify_sub_boundary(const Ring& gap, std::size_t i, std::size_t j) {
    ConvexifyResult res;
    res.replacement = shortest_path(gap, i, j);
    auto arc = boundary_arc(gap, i, j);

    // Walk the arc forward and the path backward; positive simple loops are
    // the carved regions.  Vertex ids in the local pool equal ring indices.
    VertexPool pool(0.0);
    for (Point p : gap.pts) pool.add(p);
    std::vector<VId> walk;
    for (std::size_t k : arc) walk.push_back(static_cast<VId>(k));
    for (std::size_t k = res.replacement.size() - 1; k >= 2; --k)
        walk.push_back(static_cast<VId>(res.replacement[k - 1]));
    for (const auto& loop : split_walk(pool, walk))
        if (loop_area(pool, loop) > 0.0) res.carved.push_back(loop_ring(pool, loop));
    return res;
}

Point representative_point(const Ring& outer, const std::vector<Ring>& holes) {
    auto tris = triangulate(outer);
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        double a = std::abs(signed_area({outer.pts[tris[t][0]], outer.pts[tris[t][1]],
                                         outer.pts[tris[t][2]]}));
        order.emplace_back(a, t);
    }
    std::sort(order.rbegin(), order.rend());
    // several asymmetric barycentric samples per triangle, so that one
    // candidate landing on a hole boundary does not sink the whole triangle
    static const double W[][3] = {{1 / 3.0, 1 / 3.0, 1 / 3.0}, {0.57, 0.28, 0.15},
                                  {0.15, 0.57, 0.28},          {0.28, 0.15, 0.57},
                                  {0.82, 0.11, 0.07},          {0.07, 0.82, 0.11},
                                  {0.11, 0.07, 0.82}};
    for (auto [a, t] : order) {
        if (a == 0.0) break;
        for (const auto& w : W) {
            Point c = w[0] * outer.pts[tris[t][0]] + w[1] * outer.pts[tris[t][1]] +
                      w[2] * outer.pts[tris[t][2]];
            bool ok = point_in_ring(c, outer) == 1;
            for (const Ring& h : holes)
                if (ok && point_in_ring(c, h) >= 0) ok = false;
            if (ok) return c;
        }
    }
    return centroid(outer);
}

}  // namespace tilerepair
