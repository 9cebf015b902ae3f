#ifndef TILEREPAIR_PIPELINE_HPP
#define TILEREPAIR_PIPELINE_HPP

#include <map>
#include <string>
#include <vector>

#include "tilerepair/arrangement.hpp"
#include "tilerepair/finalize.hpp"

namespace tilerepair {

struct RepairOptions {
    bool fill_gaps = true;
    double gap_area_threshold = 0.1;  // x largest adjacent unit area; larger gaps stay open
    OrphanPolicy orphan;
    double queen_length_threshold = 0.0;  // 0 disables rook-to-queen conversion
    double snap_tol = -1.0;               // < 0: derived from the bounding box
};

struct AdjacencyEdge {
    std::string a, b;             // unit ids, a < b
    double shared_length = 0.0;   // positive for rook, 0 for queen
    bool queen = false;
};

struct AdjacencyGraph {
    std::vector<AdjacencyEdge> edges;  // sorted by (a, b)
};

struct RepairReport {
    struct UnfilledGap {
        Ring boundary;
        double area = 0.0;
        std::string reason;
    };
    std::vector<UnfilledGap> unfilled;
    std::vector<std::string> disconnected;  // units still split after cleanup
    std::vector<std::string> warnings;
    int input_units = 0;
    int overlap_pieces = 0;
    int gap_regions = 0;
    int filled_gaps = 0;
    std::map<std::string, double> timings_ms;  // in-memory only, not serialized
};

struct RepairResult {
    std::vector<Unit> units;
    AdjacencyGraph adjacency;
    RepairReport report;
};

// Full repair: refined tiling, overlap assignment, gap filling, orphan
// cleanup, optional rook-to-queen conversion, adjacency extraction.
RepairResult smart_repair(const std::vector<Unit>& units, const RepairOptions& opts = {});

// Same, but units nest into a clean tiling of larger regions: each unit is
// clipped to the region it overlaps most, region boundaries act as exterior
// gap boundaries, and all cleanup stays within one region.
RepairResult smart_repair_region_aware(const std::vector<Unit>& units,
                                       const std::vector<Unit>& regions,
                                       const RepairOptions& opts = {});

// Baseline: every overlap or gap piece goes to the unit whose original
// boundary shares the most perimeter with it (ties to the smallest id).
std::vector<Unit> quick_repair(const std::vector<Unit>& units);

// Rook edges with exact shared boundary length, queen edges for single-point
// contacts.  Throws std::runtime_error if the input has overlaps.
AdjacencyGraph adjacency_graph(const std::vector<Unit>& units);

}  // namespace tilerepair

#endif
