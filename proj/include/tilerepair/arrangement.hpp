#ifndef TILEREPAIR_ARRANGEMENT_HPP
#define TILEREPAIR_ARRANGEMENT_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tilerepair/mesh.hpp"

namespace tilerepair {

// An identified input polygon; outer rings CCW, holes CCW as stored (their
// role is positional).  `attributes` carries an opaque serialized payload.
struct Unit {
    std::string id;
    std::vector<Ring> outers;
    std::vector<Ring> holes;
    std::string attributes;  // raw JSON object text, passed through to output
};

double default_snap_tol(const std::vector<Unit>& units);

// Splits edges at every pairwise intersection and at vertices lying within
// the pool tolerance of an edge; iterates to a fixed point.  Edges are
// undirected vertex-id pairs; duplicates and degenerate edges are removed.
void node_edges(VertexPool& pool, std::vector<std::array<VId, 2>>& edges);

struct Face {
    std::vector<VId> outer;               // CCW
    std::vector<std::vector<VId>> holes;  // CW as traced
    double area = 0.0;                    // outer minus holes
    Point rep;                            // interior representative point
};

// Bounded faces of the planar subdivision induced by a fully noded edge set.
std::vector<Face> polygonize(const VertexPool& pool,
                             const std::vector<std::array<VId, 2>>& edges);

struct RefinedTiling {
    VertexPool pool{0.0};
    std::vector<std::array<VId, 2>> edges;
    std::vector<Face> faces;
    std::vector<std::vector<int>> owner_sets;  // per face: sorted unit indices
};

// Step 1: fully noded union of all unit boundaries (plus any extra rings),
// polygonized, with per-piece owner sets from representative-point tests.
RefinedTiling refine(const std::vector<Unit>& units, const std::vector<Ring>& extra_boundaries,
                     double snap_tol);

// Point-in-unit for the original input geometry (outers minus holes).
bool unit_contains(const Unit& u, Point p);

// edge (a<b) -> indices of faces having the edge on their boundary
using EdgeFaceMap = std::map<std::array<VId, 2>, std::vector<int>>;
EdgeFaceMap edge_face_map(const std::vector<Face>& faces);

std::vector<std::array<VId, 2>> face_boundary_edges(const Face& f);

// Traces the boundary loops of a region given as directed edges with the
// interior on the left (e.g., the uncancelled edges of a union of faces).
// Positive-area loops are outer boundaries, negative-area loops are holes.
std::vector<std::vector<VId>> trace_loops(const VertexPool& pool,
                                          const std::set<std::pair<VId, VId>>& directed);

// Union of already-disjoint rings (CCW outers, CW holes): cancels shared
// opposite edges and re-traces the merged boundary.  Input coordinates must
// match exactly along shared edges.
struct MergedRegion {
    std::vector<Ring> outers;  // CCW
    std::vector<Ring> holes;   // CCW
};
MergedRegion merge_rings(const std::vector<Ring>& outers, const std::vector<Ring>& holes = {});

// Same, but vertices within snap_tol merge and edges split at vertices lying
// on them, so rings that meet at T-junctions still cancel cleanly.
MergedRegion merge_rings_noded(const std::vector<Ring>& outers, const std::vector<Ring>& holes,
                               double snap_tol);

struct DiagnosticsReport {
    int overlap_count = 0;
    int gap_count = 0;
    double overlap_area = 0.0;
    double gap_area = 0.0;
    // unit id -> descriptions of issues it participates in
    std::map<std::string, std::vector<std::string>> unit_issues;
};

// Counts connected overlap regions (order >= 2) and gap regions (order 0)
// within the convex extent of the input.  Interior holes in the union always
// count as gaps; regions against the convex hull count only when they
// separate units that are otherwise disconnected (hull notches alongside a
// connected tiling are not defects).
DiagnosticsReport doctor(const std::vector<Unit>& units, double snap_tol = -1.0);

}  // namespace tilerepair

#endif
