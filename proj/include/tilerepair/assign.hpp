#ifndef TILEREPAIR_ASSIGN_HPP
#define TILEREPAIR_ASSIGN_HPP

#include <string>
#include <vector>

#include "tilerepair/arrangement.hpp"

namespace tilerepair {

struct AssignResult {
    // per face of the refined tiling: assigned unit index, or -1 for gaps
    std::vector<int> owner;
    // unit ids left with more than one connected component
    std::vector<std::string> disconnected;
};

// Step 2: order-1 pieces go to their unique unit; higher orders are processed
// in increasing order, connectivity-restoring claims first (disconnected
// units in ascending id order), then largest shared perimeter with the
// partially rebuilt units, ties to the smallest unit id.
AssignResult assign_pieces(const std::vector<Unit>& units, const RefinedTiling& rt);

// Length of the 1-dimensional part of the intersection of two boundaries.
double shared_perimeter(const std::vector<Ring>& a, const std::vector<Ring>& b);

}  // namespace tilerepair

#endif
