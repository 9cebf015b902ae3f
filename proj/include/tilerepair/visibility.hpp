#ifndef TILEREPAIR_VISIBILITY_HPP
#define TILEREPAIR_VISIBILITY_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tilerepair/paths.hpp"

namespace tilerepair {

// A pair of CCW boundary arcs of a gap ring, given by inclusive start/end
// vertex indices.  Arcs are non-adjacent when they share no vertex.
struct ArcPair {
    std::size_t i0, i1;  // arc B_i: i0 .. i1 going CCW
    std::size_t j0, j1;  // arc B_j
};

bool arcs_adjacent(const Ring& gap, const ArcPair& pair);

// True iff two vertex-index paths share no point: no common vertex and no
// exact segment intersection between their edges.
bool paths_disjoint(const Ring& poly, const std::vector<std::size_t>& p1,
                    const std::vector<std::size_t>& p2);

// Criterion: the arcs are strongly mutually visible iff the shortest path
// terminal(B_i) -> initial(B_j) and the shortest path terminal(B_j) ->
// initial(B_i) are disjoint.
bool strongly_mutually_visible(const Ring& gap, const Triangulation& tn, const ArcPair& pair);
bool strongly_mutually_visible(const Ring& gap, const ArcPair& pair);

// Minimum Euclidean distance between the two arcs as point sets.
double pair_distance(const Ring& gap, const ArcPair& pair);

struct Bridge {
    std::vector<std::size_t> beta1;  // initial(B_i) -> initial(B_j)
    std::vector<std::size_t> beta2;  // terminal(B_i) -> terminal(B_j)
    Point crossing;
    bool crossing_at_vertex = false;
    std::size_t crossing_vertex = 0;  // valid when crossing_at_vertex
};

struct BridgeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds the two diagonals of an SMV pair and locates their unique crossing.
// Throws BridgeError if the diagonals do not intersect in exactly one point
// (impossible for a valid SMV pair by the theory; reported, not guessed).
Bridge build_bridge(const Ring& gap, const Triangulation& tn, const ArcPair& pair);

}  // namespace tilerepair

#endif
