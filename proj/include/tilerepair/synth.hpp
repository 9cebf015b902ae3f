#ifndef TILEREPAIR_SYNTH_HPP
#define TILEREPAIR_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "tilerepair/pipeline.hpp"

namespace tilerepair {

// All generators and the perturbation use a self-contained splitmix64-based
// generator, so the same seed gives bit-identical output on every platform
// (standard-library distributions are implementation-defined).

struct PerturbationSpec {
    double epsilon = 0.0;  // max per-coordinate displacement
    std::uint64_t rng_seed = 0;
    enum class Mode { uniform, gaussian_clipped } mode = Mode::uniform;
    // Displace formerly shared vertices identically (derived from the vertex
    // coordinates) instead of independently per unit.  Control mode: the
    // result stays a clean tiling.
    bool shared_vertex_consistent = false;
};

struct SyntheticTiling {
    std::vector<Unit> units;
    AdjacencyGraph adjacency;  // ground truth by construction
};

// Axis-aligned nx x ny grid of square cells; ids "c<row>_<col>"; adjacency is
// the rook 4-neighborhood plus diagonal queen contacts.
SyntheticTiling generate_grid(int nx, int ny, double cell_size);

struct Box {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
};

// Voronoi cells of n random sites in the box, clipped to it; ids "v<k>";
// adjacency is the pairs sharing a positive-length bisector edge.
SyntheticTiling generate_voronoi(int n_sites, std::uint64_t seed, const Box& box = {});

// Motivating strip-gap scenario: n unit squares stacked on the west side, one
// full-height block on the east, separated by an open column of width
// gap_width.  The gap has one sub-boundary per western unit.  The ground-truth
// adjacency is the expected post-repair graph: the stack chain plus every
// western unit adjacent to the block.
SyntheticTiling generate_strip_gap(int n, double gap_width);

// Displace every vertex of every ring independently per unit (shared vertices
// diverge, creating gaps and overlaps).  A displacement that would make a
// ring self-intersect is re-drawn up to 100 times, then reported as an error.
std::vector<Unit> perturb(const std::vector<Unit>& units, const PerturbationSpec& spec);

}  // namespace tilerepair

#endif
