#ifndef TILEREPAIR_PATHS_HPP
#define TILEREPAIR_PATHS_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "tilerepair/geom.hpp"

namespace tilerepair {

using Tri = std::array<std::size_t, 3>;

// Ear-clipping triangulation of a simple CCW polygon; no Steiner points,
// exactly n-2 triangles, indices into poly.pts.
std::vector<Tri> triangulate(const Ring& poly);

struct Triangulation {
    std::vector<Tri> tris;
    // adj[t][e]: triangle across edge (tris[t][e], tris[t][(e+1)%3]), or -1.
    std::vector<std::array<int, 3>> adj;
};

Triangulation build_triangulation(const Ring& poly);

// Shortest path inside the closed polygon between vertices a and b, as a
// sequence of polygon vertex indices (funnel over the triangulation dual).
// Collinear chains are canonicalized: every polygon vertex lying on the path
// is included.
std::vector<std::size_t> shortest_path(const Ring& poly, std::size_t a, std::size_t b);
std::vector<std::size_t> shortest_path(const Ring& poly, const Triangulation& tn,
                                       std::size_t a, std::size_t b);

double path_length(const Ring& poly, const std::vector<std::size_t>& path);

// Arc of the boundary from index i to index j going CCW (inclusive).
std::vector<std::size_t> boundary_arc(const Ring& poly, std::size_t i, std::size_t j);

// True iff every interior vertex of the CCW boundary arc i..j is reflex.
bool is_outward_convex(const Ring& poly, std::size_t i, std::size_t j);

struct ConvexifyResult {
    std::vector<std::size_t> replacement;  // shortest path i..j, vertex indices
    std::vector<Ring> carved;              // regions between the arc and the path
};

// Replaces the boundary arc i..j by the shortest path between its endpoints;
// carved regions are the area between them (empty when already outward convex).
ConvexifyResult convexify_sub_boundary(const Ring& gap, std::size_t i, std::size_t j);

// Interior representative point: centroid of the largest triangle of an
// ear-clip triangulation that avoids all holes.
Point representative_point(const Ring& outer, const std::vector<Ring>& holes = {});

}  // namespace tilerepair

#endif
