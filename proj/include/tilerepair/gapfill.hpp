#ifndef TILEREPAIR_GAPFILL_HPP
#define TILEREPAIR_GAPFILL_HPP

#include <array>
#include <string>
#include <vector>

#include "tilerepair/arrangement.hpp"
#include "tilerepair/assign.hpp"

namespace tilerepair {

// boundary-edge tag for an arc with no adjacent unit (region boundary)
constexpr int kExteriorTag = -2;

// A gap polygon with one owner tag per boundary edge (unit index, or
// kExteriorTag for region-boundary arcs in nested mode).
struct GapBoundary {
    Ring poly;              // CCW
    std::vector<int> tags;  // tags[k] tags edge poly[k] -> poly[k+1]
};

// Maximal runs of equally-tagged edges, in cyclic boundary order.  A unit
// touching the gap on several disjoint arcs yields several subs.
struct Sub {
    std::size_t start, end;  // inclusive vertex arc; start == end means the whole boundary
    int owner;
};
std::vector<Sub> gap_subs(const GapBoundary& g);

struct FillPiece {
    Ring region;
    int owner;
};

struct FillResult {
    std::vector<FillPiece> pieces;
    bool filled = true;
    std::string reason;  // set when !filled
};

// Fills one simply connected gap: 1 sub absorbs, 2 subs split along the
// shortest path, 3 subs use angle bisectors + incenter, >= 4 use nearest
// strongly-mutually-visible bridging with recursion.  Exterior-tagged arcs
// follow the nested-mode rules.  On a theory-violating configuration the
// result is marked unfilled with a reason instead of guessing.
FillResult fill_gap(const GapBoundary& g);

// Triangle split from the incenter: one piece per side.
std::vector<FillPiece> fill_triangle_incenter(const Ring& tri, const std::array<int, 3>& owners);

struct ExtractedGap {
    GapBoundary boundary;
    // enclosed islands (non-empty => not simply connected); rings are CW as
    // traced, tagged like the outer boundary
    std::vector<GapBoundary> holes;
    double area = 0.0;
    std::vector<int> adjacent_units;  // sorted unit indices
    std::vector<int> faces;           // member faces in the refined tiling
};

// Connected order-0 regions of the refined tiling, merged across shared
// edges, with boundary edges tagged by the assigned unit on the other side.
std::vector<ExtractedGap> extract_gaps(const RefinedTiling& rt, const AssignResult& assign);

// Cuts a gap with holes into simply connected tagged gaps along axis-aligned
// lines through each hole, so each piece can be filled on its own.  Cut edges
// are tagged kExteriorTag (pieces fill up to the cut).  Returns an empty list
// and sets `reason` when the region cannot be split cleanly.
std::vector<GapBoundary> split_gap_holes(const ExtractedGap& gap, std::string& reason);

// Splits a weakly simple gap polygon at repeated (pinch) vertices into
// strictly simple lobes.  Counterclockwise lobes are gap components;
// clockwise lobes are islands the boundary wraps around.  Zero-area
// whiskers are dropped.
std::vector<GapBoundary> split_pinches(const GapBoundary& g);

}  // namespace tilerepair

#endif
