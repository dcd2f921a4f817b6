#pragma once

#include "vmet/connect.hpp"
#include "vmet/embed.hpp"
#include "vmet/space.hpp"
#include "vmet/value_set.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vmet {

struct DivideError : std::invalid_argument {
    enum class Kind { BadBounds, CannotSeparate, Degenerate, BadSequence };
    Kind kind;
    DivideError(Kind k, const std::string& what) : std::invalid_argument(what), kind(k) {}
};

struct RingSpec {
    std::size_t center;
    Rational lo, hi;  // 0 <= lo < hi
};

// {x : lo <= d(c,x) < hi}, half open, as a sorted index set.
std::vector<std::size_t> ring(const FiniteMetricSpace& space, std::size_t c, const Rational& lo, const Rational& hi);
std::vector<std::size_t> ring(const FiniteMetricSpace& space, const RingSpec& spec);

// Splits the open ball of radius l around c into rings [l(n-1)/n, ln/(n+1)),
// even n to one side and odd n to the other; a point at distance d < l sits
// in ring n = floor(l / (l - d)). Points at distance >= l land in neither.
struct Stripes {
    std::vector<std::size_t> even, odd;
};
Stripes stripes(const FiniteMetricSpace& space, std::size_t c, const Rational& l);

// Pairwise disjoint open balls covering the space; every radius avoids all
// realized distances and every other radius.
struct BallCover {
    std::vector<std::size_t> centers;
    std::vector<Rational> radii;  // parallel to centers
};

// Greedy cover: the first uncovered point (in the given order, default label
// order) becomes a center; its radius is the midpoint of the widest subgap of
// (0, Lambda/2) cut by realized distances and used radii, preferring the
// higher gap on ties, skipping gaps whose ball would overlap a previous one.
BallCover ball_cover(const FiniteMetricSpace& space, const Rational& Lambda,
                     const std::vector<std::size_t>* order = nullptr);

// Even/odd stripe split within each covering ball; the cover's balls
// partition the space, so (even, odd) is a partition.
Stripes divisibility_partition(const FiniteMetricSpace& space, const BallCover& cover);

// Greedy escalating rings around a0: each new anchor is the nearest point
// beyond twice the previous radius, each new radius clears the anchor with a
// margin of the least positive distance. Ring k collects [r_k, r_{k+1}), the
// last ring is unbounded; even rings to one side, odd to the other.
struct UnboundedPartition {
    std::vector<Rational> r_seq;
    std::vector<std::size_t> a_seq;
    std::vector<std::size_t> even, odd;
    std::size_t steps = 0;  // anchors found
};
UnboundedPartition unbounded_partition(const FiniteMetricSpace& space, std::size_t a0);

// Ultrametric spectrum partition: cover by open balls whose radius is the
// last entry of r_seq, first center a then greedily by label order; inside
// each ball, ring index i holds [r_i, r_{i+1}), even i to one side.
struct UltraSpecPartition {
    std::vector<std::size_t> centers;
    std::vector<std::size_t> even, odd;
};
UltraSpecPartition ultra_spec_partition(const FiniteMetricSpace& space, std::size_t a,
                                        const std::vector<Rational>& r_seq);

// a is W-sub-isolated when for every positive realized scale eps some
// pattern with distances from W and diameter <= eps has no isometric copy
// through a. Patterns are enumerated over the given sizes; for pairs this is
// exactly: some delta in W with 0 < delta <= eps is missing from a's
// spectrum.
std::vector<std::size_t> sub_isolated_points(const FiniteMetricSpace& space, const ValueSet& W,
                                             const std::vector<std::size_t>& pattern_sizes = {2});

// Repeatedly deletes sub-isolated points until nothing changes. The chain
// lists every stage in original point indices, the flag says whether the
// fixpoint is empty.
struct ScatterResult {
    std::vector<std::vector<std::size_t>> chain;
    bool sub_scattered;
};
ScatterResult scattered_fixpoint(const FiniteMetricSpace& space, const ValueSet& W,
                                 const std::vector<std::size_t>& pattern_sizes = {2});

// Runs the self-embedding test against every block of a partition; the
// partition divides the space when no block holds a full copy.
struct DivisibilityReport {
    struct Block {
        std::vector<std::size_t> points;
        bool contains_copy;
        std::optional<Embedding> witness;  // first embedding when one exists
    };
    std::vector<Block> blocks;
    bool divisible;
};
DivisibilityReport divisibility_experiment(const FiniteMetricSpace& space, const Partition& partition);

}  // namespace vmet
