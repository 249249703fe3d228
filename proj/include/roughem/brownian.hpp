#pragma once

#include "roughem/rng.hpp"

#include <cstdint>
#include <vector>

namespace roughem {

// A d-dimensional Brownian path stored as increments on the dyadic grid
// t_k = k T / 2^level. Built top-down by bridge refinement, so the same
// (seed, path_index) yields consistent paths across levels: coarsening a
// finer sample of the same path reproduces the coarser increments.
struct BrownianPathGrid {
    double horizon = 1.0;
    int level = 0;
    int dims = 1;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    std::vector<double> increments;  // [k * dims + d], k in [0, 2^level)
    std::vector<double> values;      // [k * dims + d], k in [0, 2^level], W at t_k

    int steps() const { return 1 << level; }
    double dt() const { return horizon / steps(); }
    double increment(int k, int d) const { return increments[static_cast<std::size_t>(k) * dims + d]; }
    double value(int k, int d) const { return values[static_cast<std::size_t>(k) * dims + d]; }

    // Extra independent N(0,1) streams keyed on the same (seed, path_index);
    // used by exact simulators that need randomness beyond the increments.
    double aux_normal(std::uint32_t stream, std::uint64_t slot) const;
};

// Samples the path at the requested level. Increments are a pure function of
// (seed, path_index, level, slot): level here is the bridge depth of the slot,
// so paths at different sampling levels agree on shared dyadic times.
BrownianPathGrid sample_path(std::uint64_t seed, std::uint64_t path_index, double horizon,
                             int level, int dims);

// Increments of the same path at a coarser level; each coarse increment is
// the left-to-right sum of its 2^(level - coarse_level) children.
std::vector<double> coarsen(const BrownianPathGrid& path, int coarse_level);

} // namespace roughem
