#ifndef TILEREPAIR_FINALIZE_HPP
#define TILEREPAIR_FINALIZE_HPP

#include <string>
#include <vector>

#include "tilerepair/arrangement.hpp"

namespace tilerepair {

struct OrphanPolicy {
    double ratio_threshold = 0.0001;  // vs. the unit's largest component
};

struct QueenConversion {
    double length_threshold = 0.0;   // rook adjacencies shorter than this convert
    double disk_radius_factor = 0.55;  // x adjacency length; must exceed 0.5
    int circle_segments = 64;
};

// Final cleanup: components smaller than ratio_threshold x the unit's largest
// component move to the neighbor sharing the most perimeter, smallest first,
// until every unit is connected or the smallest orphan exceeds the threshold.
// Units left with several components are appended to `residual`.
std::vector<Unit> reconnect_orphans(std::vector<Unit> units, const OrphanPolicy& policy,
                                    std::vector<std::string>* residual = nullptr);

// Replaces each rook adjacency shorter than length_threshold by a single
// point (queen) contact: a disk slightly larger than the adjacency is carved
// out and re-tiled as pie pieces meeting at the disk center.  Overlapping
// disks merge into the convex hull of their union with one contact point at
// the hull centroid.  Skipped conversions (disk not fully covered by units)
// are reported through `warnings`.
std::vector<Unit> rook_to_queen(std::vector<Unit> units, const QueenConversion& conv,
                                std::vector<std::string>* warnings = nullptr);

}  // namespace tilerepair

#endif
