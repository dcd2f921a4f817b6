#pragma once

#include "vmet/embed.hpp"
#include "vmet/space.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace vmet {

struct UltraError : std::invalid_argument {
    enum class Kind { NotUltrametric, InvalidTree, UnknownNode, BadSpec, SizeLimitExceeded };
    Kind kind;
    UltraError(Kind k, const std::string& what) : std::invalid_argument(what), kind(k) {}
};

// First triple (i,j,k) with d(i,j) > max(d(i,k), d(k,j)), scanning pairs
// (i,j) ascending and k ascending; nullopt when the space is ultrametric.
std::optional<std::array<std::size_t, 3>> ultrametric_violation(const FiniteMetricSpace& space);
bool is_ultrametric(const FiniteMetricSpace& space);

// Rooted tree with a rational value per node, strictly decreasing towards the
// leaves; leaves have value 0 and carry a point name. Node 0 is the root and
// parents always precede children in the node array.
struct ValuedTree {
    struct Node {
        Rational value;
        std::size_t parent = SIZE_MAX;  // SIZE_MAX for the root
        std::vector<std::size_t> children;
        std::optional<std::string> point;  // set exactly on leaves
        bool leaf() const { return point.has_value(); }
    };
    std::vector<Node> nodes;

    std::vector<std::size_t> leaves() const;
    // Root-to-node path values as a sorted ascending set.
    std::vector<Rational> path_value_set(std::size_t node) const;
};

// Throws InvalidTree unless: exactly one root, parents precede children,
// child lists match parent pointers, values strictly decrease downwards,
// leaves (and only leaves) carry point names with value 0, names are unique,
// and every childless node is a leaf.
void validate_tree(const ValuedTree& tree);

// The ball tree of an ultrametric space: all closed balls with realized
// radii, ordered by inclusion, valued by diameter. balls[i] lists the point
// indices of node i; singleton balls are the leaves.
struct NerveResult {
    ValuedTree tree;
    std::vector<std::vector<std::size_t>> balls;
};
NerveResult nerve(const FiniteMetricSpace& space);

// Leaves become points, the distance of two leaves is the value of their
// deepest common ancestor. Point order is node order (for a nerve tree this
// restores the original point order).
FiniteMetricSpace tree_to_space(const ValuedTree& tree);

std::size_t degree(const ValuedTree& tree, std::size_t node);  // child count

// Homogeneity of the leaf space, read off the tree: equal-valued nodes must
// have equal degree, and all leaves must see the same set of values on their
// root path.
struct HomogeneityResult {
    enum class ViolationKind { DegreeMismatch, LeafPathMismatch };
    bool homogeneous = true;
    std::optional<ViolationKind> kind;
    std::size_t node_a = SIZE_MAX, node_b = SIZE_MAX;
};
HomogeneityResult homogeneity_check(const ValuedTree& tree);

// Spec for the layered tuple space: level mu contributes positions
// 0..degree-1 and two tuples are at distance weights[mu] where mu is the
// first level at which they differ. A missing degree means "unbounded" and
// is materialized with unbounded_cap branches.
struct OmegaSpec {
    std::vector<Rational> weights;                     // strictly decreasing, positive
    std::vector<std::optional<std::size_t>> degrees;   // each >= 2; nullopt = unbounded
    std::size_t unbounded_cap = 3;
};
FiniteMetricSpace omega_sequence_space(const OmegaSpec& spec, std::size_t size_limit = 4096);

// Nerve-based report: homogeneity, spectrum, and the internal degrees
// compared against the cap that stands in for "unbounded".
struct IndivisibilityReport {
    HomogeneityResult homogeneity;
    std::vector<Rational> spectrum;
    bool spectrum_dually_well_ordered = true;  // finite spectra always are
    Rational diameter;
    bool diameter_attained = true;  // finite spaces always attain it
    struct NodeInfo {
        std::size_t node;
        Rational value;
        std::size_t degree;
        std::string status;  // "below-cap" | "at-cap" | "above-cap"
    };
    std::vector<NodeInfo> internal_nodes;
};
IndivisibilityReport indivisibility_report(const FiniteMetricSpace& space, std::size_t cap);

// Greedy two-coloring analysis of an ultrametric space. Either produces a
// monochromatic isometric self-copy (into color 0 when enough balls embed
// into their 0-part, otherwise greedily into color 1), or reports the ball
// where the greedy ran out of branches.
struct GreedyMonoResult {
    std::optional<Embedding> embedding;
    int into_color = -1;
    std::optional<std::vector<std::size_t>> stuck_ball;  // point indices
    bool ok() const { return embedding.has_value(); }
};
GreedyMonoResult greedy_monochromatic_embedding(const FiniteMetricSpace& space, const std::vector<int>& coloring);

}  // namespace vmet
