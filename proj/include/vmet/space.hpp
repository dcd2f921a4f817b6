#pragma once

#include "vmet/rational.hpp"
#include "vmet/value_set.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vmet {

struct SpaceError : std::invalid_argument {
    enum class Kind {
        ShapeMismatch,
        DuplicateLabel,
        Symmetry,
        Separation,
        Triangle,
        Spectrum,
        UnknownPoint,
        EmptyFactor,
        ValueSetTooSparse,
    };
    Kind kind;
    // Offending point indices where applicable; unused slots are SIZE_MAX.
    std::size_t i = SIZE_MAX, j = SIZE_MAX, k = SIZE_MAX;
    SpaceError(Kind kind_, const std::string& what, std::size_t i_ = SIZE_MAX, std::size_t j_ = SIZE_MAX,
               std::size_t k_ = SIZE_MAX)
        : std::invalid_argument(what), kind(kind_), i(i_), j(j_), k(k_) {}
};

// Finite metric space with labelled points and exact rational distances.
// Optionally carries the value set the distances are constrained to.
class FiniteMetricSpace {
public:
    // Validates shape, label uniqueness, symmetry, separation, the triangle
    // inequality and (when given) spectrum containment, in that order.
    static FiniteMetricSpace make(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
                                  std::optional<ValueSet> value_set = std::nullopt);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t index_of(const std::string& label) const;  // throws UnknownPoint
    std::optional<std::size_t> find(const std::string& label) const;

    const Rational& d(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }

    // Full distance matrix in point order; convenient for rebuilding a space
    // with a different value set attached.
    std::vector<std::vector<Rational>> matrix() const;

    const std::optional<ValueSet>& value_set() const { return value_set_; }

    // All distances realized in the space, ascending; contains 0 when the
    // space is nonempty.
    std::vector<Rational> spectrum() const;
    // Distances realized from the point, ascending; contains 0.
    std::vector<Rational> spectrum_at(std::size_t i) const;

    Rational diameter() const;  // 0 for spaces with < 2 points
    // Least nonzero distance; nullopt for spaces with < 2 points.
    std::optional<Rational> min_positive_distance() const;

    // Induced subspace on the given point indices (kept in the given order).
    FiniteMetricSpace restrict(const std::vector<std::size_t>& points) const;

    friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
        return a.labels_ == b.labels_ && a.dist_ == b.dist_;
    }

private:
    FiniteMetricSpace() = default;
    std::vector<std::string> labels_;
    std::vector<Rational> dist_;  // row-major size() x size()
    std::optional<ValueSet> value_set_;
    std::map<std::string, std::size_t> index_;
};

// Sup-distance product: points are tuples, distance is the max over
// coordinates. Labels are "(a,b,...)". Factors must be nonempty.
FiniteMetricSpace sup_product(const std::vector<FiniteMetricSpace>& factors);
FiniteMetricSpace sup_power(const FiniteMetricSpace& base, std::size_t n);

// A combinatorial line in the n-fold power of an alphabet space: some
// coordinates are pinned to alphabet points, the (nonempty) rest move
// together through the alphabet.
struct CombinatorialLine {
    std::vector<std::optional<std::size_t>> fixed;  // per coordinate: pinned alphabet index, or moving
    std::vector<std::vector<std::size_t>> points;   // one tuple per alphabet point, in alphabet order
};

// All lines of the n-fold power, enumerated by fixed-coordinate pattern in
// lexicographic order (moving coordinates first in each position).
std::vector<CombinatorialLine> combinatorial_lines(const FiniteMetricSpace& alphabet, std::size_t n);

// Equally spaced chain inside V: point x_k at accumulated distance a_k where
// a_k is the least element of V in [k ell / n, (k+1) ell / n) whose slack
// eps_k = a_k - k ell / n stays subadditive; a_n = ell. The result is
// validated as a metric with spectrum inside V.
FiniteMetricSpace chain_space(const ValueSet& V, const Rational& ell, std::size_t n);

// The two-coordinate rational example: points (0,0) and (m,n) for
// 1 <= m < n <= N, with d((0,0),(m,n)) = m/n, same-row distance
// |m1-m2|/n and cross-row distance m1/n1 + m2/n2.
FiniteMetricSpace example_space_mn(std::size_t N);

}  // namespace vmet
