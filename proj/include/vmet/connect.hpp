#pragma once

#include "vmet/space.hpp"

#include <cstddef>
#include <vector>

namespace vmet {

// Blocks of point indices, each sorted ascending, ordered by least element.
struct Partition {
    std::vector<std::vector<std::size_t>> blocks;
};

// Disjoint, sorted blocks covering exactly {0, ..., size-1}.
bool is_partition_of(const Partition& partition, std::size_t size);

// Union-find keeping the least index of each class as its representative.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    // Returns true when two classes merged.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }
    Partition to_partition();

  private:
    std::vector<std::size_t> parent_;
};

// Components of the graph with an edge wherever d(x,y) <= eps.
Partition eps_components(const FiniteMetricSpace& space, const Rational& eps);

// min(1, diameter of the eps-component of a).
Rational lambda_eps(const FiniteMetricSpace& space, std::size_t a, const Rational& eps);

// lambda(a) over all scales: evaluated at every positive realized distance
// plus one threshold below the minimum (which isolates a), so the value is 0
// on every finite space. The profile keeps the per-scale values, largest
// scale first.
struct LambdaProfile {
    struct Row {
        Rational eps;
        Rational value;
    };
    std::vector<Row> rows;
    Rational value;  // min over the rows; 0 when the space has <= 1 point
};
LambdaProfile lambda(const FiniteMetricSpace& space, std::size_t a);

// Largest ultrametric below d: single-linkage merge thresholds. Same labels,
// value set carried over (the new distances are a subset of the old ones).
FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& space);

// Component counts per scale, ascending over the positive spectrum. A finite
// space is Cantor connected in the every-scale sense only when it has at
// most one point.
struct CantorReport {
    struct Level {
        Rational eps;
        std::size_t components;
        bool connected;
    };
    std::vector<Level> levels;
    bool cantor_connected;
};
CantorReport cantor_report(const FiniteMetricSpace& space);

}  // namespace vmet
