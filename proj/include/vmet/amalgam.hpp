#pragma once

#include "vmet/space.hpp"
#include "vmet/value_set.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vmet {

struct AmalgamError : std::invalid_argument {
    enum class Kind { NoAmalgam, InvalidSocket, FourValuesFailure, PreconditionViolated, HypothesisViolated, EmptyOrbit };
    Kind kind;
    AmalgamError(Kind k, const std::string& what) : std::invalid_argument(what), kind(k) {}
};

// Distance constraints (b_i, d_i) a new point would have to satisfy. Valid
// when d_i + d_j >= d(b_i,b_j) and d_i + d(b_i,b_j) >= d_j for all pairs,
// and every d_i lies in the space's value set when one is bound.
struct DSocket {
    struct Entry {
        std::size_t b;  // point index
        Rational d;
    };
    std::vector<Entry> entries;
};

bool validate_dsocket(const FiniteMetricSpace& space, const DSocket& socket);

// {s : d(s, b_i) = d_i for all i}, sorted; the whole space for an empty
// socket. May be empty in a finite approximant.
std::vector<std::size_t> orbit(const FiniteMetricSpace& space, const DSocket& socket);

struct AmalgamResult {
    FiniteMetricSpace space;
    struct Chosen {
        std::string a, b;
        Rational w;
    };
    std::vector<Chosen> chosen;        // newly decided distances, in decision order
    std::vector<Rational> admissible;  // one-point case: positive [a', a] over V
};

// Both spaces contribute exactly one point the other lacks; the new distance
// w is the least positive value of V within [a', a] where a' is the largest
// spread and a the smallest sum of the two distances to a shared point.
// Throws NoAmalgam when no value qualifies.
AmalgamResult one_point_amalgam(const FiniteMetricSpace& m1, const FiniteMetricSpace& m2, const ValueSet& V);

// Iterated one-point amalgamation over the shared part; unknown pairs are
// decided in point order, each by the least admissible value given every
// distance known so far. When m1's points all appear in m2, returns m2
// untouched.
AmalgamResult disjoint_amalgam(const FiniteMetricSpace& m1, const FiniteMetricSpace& m2, const ValueSet& V);

struct RealizeResult {
    FiniteMetricSpace space;
    std::size_t new_point;
};

// Adds one point with d(s, b_i) = d_i exactly; distances to non-socket
// points fall out of the amalgamation tie-break. Socket distances must be
// positive (a zero entry would collide with its vertex). The label defaults
// to the first free "p<k>".
RealizeResult realize_socket(const FiniteMetricSpace& space, const DSocket& socket, const ValueSet& V,
                             std::optional<std::string> new_label = std::nullopt);

// Finite truncation of the one-point-extension construction over V.
struct UrysohnResult {
    FiniteMetricSpace space;
    std::size_t realized_prefix;  // largest k with every socket over the first k points realized
    struct LogEntry {
        std::size_t step;
        DSocket socket;
        std::string new_label;
    };
    std::vector<LogEntry> log;
};

// Grows the seed (default: the single point "p0") by realizing unrealized
// sockets, working through tiers: tier m covers sockets whose highest vertex
// is point m-1, ordered by size then vertex set then distance vector, and
// rng_seed shuffles each tier before processing. Earlier tiers always finish
// before later ones, which makes the realized_prefix audit meaningful.
// Throws FourValuesFailure when V fails the four-values check.
UrysohnResult urysohn_approximant(const ValueSet& V, const std::optional<FiniteMetricSpace>& seed,
                                  std::size_t max_points, std::uint64_t rng_seed);

// Extends a socket by (a, r). Requires, in this order: a valid socket, some
// orbit point within r of a, and d(a, b_i) >= r for every vertex; then the
// extended socket is valid again (each inequality is re-verified).
DSocket rim_extend(const FiniteMetricSpace& space, const DSocket& socket, std::size_t a, const Rational& r);

// Removes the open balls around the given centers (separation hypothesis
// d(a_i,a_j) >= r_i + r_j enforced up front) and checks every valid socket
// over the remaining points: its orbit should meet the remainder, or at
// least extend along the rim of an offending ball. Socket distances come
// from the space's value set when bound, otherwise from the spectrum.
struct HolesReport {
    std::vector<std::size_t> removed;  // union of the open balls
    std::size_t sockets_checked = 0;
    std::size_t realized = 0;     // orbit meets the complement
    std::size_t rim_pending = 0;  // witnesses only inside the balls; rim extension valid
    std::size_t empty_orbit = 0;  // no witness at all (truncation artifact)
    struct Violation {
        DSocket socket;
        std::string reason;
    };
    std::vector<Violation> violations;  // rim extension impossible
    bool ok() const { return violations.empty(); }
};
HolesReport holes_check(const FiniteMetricSpace& space, const std::vector<std::size_t>& centers,
                        const std::vector<Rational>& radii, std::size_t socket_size_cap = 3);

// ell = least socket distance; checks every orbit pair stays within 2*ell.
struct OrbitDiameter {
    Rational ell;
    bool within_bound;
    std::vector<std::size_t> orbit_points;
};
OrbitDiameter orbit_diameter_check(const FiniteMetricSpace& space, const DSocket& socket);

}  // namespace vmet
