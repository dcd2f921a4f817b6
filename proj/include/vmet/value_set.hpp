#pragma once

#include "vmet/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vmet {

// Finite set of admissible distance values. Invariant: sorted ascending,
// duplicate-free, nonnegative, and 0 is always a member.
class ValueSet {
public:
    enum class Error { NegativeValue, MissingZero };

    struct BadValueSet : std::invalid_argument {
        Error kind;
        explicit BadValueSet(Error k, const std::string& what) : std::invalid_argument(what), kind(k) {}
    };

    static ValueSet make(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Rational& max() const { return values_.back(); }

    bool contains(const Rational& v) const;

    // Values > 0, ascending.
    std::vector<Rational> positives() const { return {values_.begin() + 1, values_.end()}; }

    // Least element >= x, if any.
    std::optional<Rational> least_geq(const Rational& x) const;
    // Least element of [lo, hi], if any.
    std::optional<Rational> least_in_closed(const Rational& lo, const Rational& hi) const;
    // Greatest element < x, if any.
    std::optional<Rational> greatest_lt(const Rational& x) const;
    // True iff some element lies in the open interval (lo, hi).
    bool any_in_open(const Rational& lo, const Rational& hi) const;

    friend bool operator==(const ValueSet& a, const ValueSet& b) { return a.values_ == b.values_; }

private:
    explicit ValueSet(std::vector<Rational> v) : values_(std::move(v)) {}
    std::vector<Rational> values_;
};

// Closed interval of admissible linking values for two triangles sharing a
// base pair: [max(|u1-u2|,|u1'-u2'|), min(u1+u2, u1'+u2')]. May be empty.
struct Interval {
    Rational lo;
    Rational hi;
    bool empty() const { return hi < lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

using Quad = std::array<Rational, 4>;

// Arguments must be nonnegative.
Interval phi_interval(const Rational& u1, const Rational& u2, const Rational& u1p, const Rational& u2p);

// True iff phi_interval meets V.
bool rho(const ValueSet& V, const Rational& u1, const Rational& u2, const Rational& u1p, const Rational& u2p);

// Checks the quadruple condition: whenever rho(u1,u2,u1',u2') holds, so does
// rho(u1,u1',u2,u2'). Scans quadruples in the fixed nested order
// (u1, u1', u2', u2) ascending and reports the first violating quadruple as
// (u1, u2, u1', u2').
struct FourValuesResult {
    std::optional<Quad> counterexample;
    bool ok() const { return !counterexample.has_value(); }
};
FourValuesResult four_values_check(const ValueSet& V);
// Same result, OpenMP scan. The serial function is the reference.
FourValuesResult four_values_check_parallel(const ValueSet& V);

// True iff for all u1,u2,u1',u2' in V with u1-u1' <= u2+u2' some v in V has
// u1-u1' <= v <= u2+u2'. Implies a clean four-values check.
struct SufficientConditionResult {
    bool holds = true;
    std::optional<Quad> failure;  // (u1, u2, u1p, u2p) with empty [u1-u1', u2+u2'] in V
};
SufficientConditionResult sufficient_condition_check(const ValueSet& V);

// Residuation y over x: least r in V with y <= x + r. Pre: x, y in V, x <= y.
struct NotInSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OrderViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
Rational residuation(const ValueSet& V, const Rational& x, const Rational& y);

// The induced distance on the points of V: d_V(x,y) = least r in V with
// |x-y| <= r. Triangle inequality holds iff the four-values check passes;
// the first failing triple (scan order: sorted V cubed, lexicographic) is
// reported otherwise.
struct DvResult {
    std::vector<Rational> points;               // sorted V
    std::vector<std::vector<Rational>> table;   // table[i][j] = d_V(points[i], points[j])
    std::optional<std::array<Rational, 3>> failure;  // (x, y, z) with d(x,z) > d(x,y)+d(y,z)
    bool ok() const { return !failure.has_value(); }
};
DvResult dv_distance(const ValueSet& V);

// Elements of V that are <= ell.
ValueSet initial_segment(const ValueSet& V, const Rational& ell);

// For each nonzero w in V: is (w/2, w) free of elements of V?  Runs are the
// maximal ascending blocks of V \ {0} with no such gap inside.
struct GapReport {
    struct Entry {
        Rational w;
        bool gap;  // (w/2, w) meets no element of V
    };
    std::vector<Entry> entries;                        // ascending by w
    std::vector<std::pair<Rational, Rational>> runs;   // [lo, hi] blocks, ascending
};
GapReport gap_report(const ValueSet& V);

}  // namespace vmet
