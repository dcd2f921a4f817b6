#pragma once

#include "vmet/space.hpp"

#include <cstddef>
#include <vector>

namespace vmet {

// Distance-preserving injection of a pattern space into a target space.
// image[i] is the target index of pattern point i.
struct Embedding {
    std::vector<std::size_t> image;
};

// All isometric embeddings of pattern into target, in a deterministic order:
// pattern points are assigned most-constrained-first (descending count of
// distinct distances at the point, ties by index), candidate images are tried
// in target index order, and results come out in search order. limit = 0
// means unbounded.
std::vector<Embedding> isometric_embeddings(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target,
                                            std::size_t limit = 0);

// Same enumeration split over the first assignment's candidates with OpenMP;
// the merged result equals the serial one.
std::vector<Embedding> isometric_embeddings_parallel(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target,
                                                     std::size_t limit = 0);

bool embeds(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target);

// Colors c in {0,1} such that pattern embeds into the subspace of target on
// color class c. coloring[i] must be 0 or 1.
std::vector<int> monochromatic_part(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target,
                                    const std::vector<int>& coloring);

}  // namespace vmet
