#include "doctest.h"

#include "support/generators.hpp"
#include "vmet/amalgam.hpp"
#include "vmet/embed.hpp"
#include "vmet/space.hpp"
#include "vmet/value_set.hpp"

#include <algorithm>
#include <optional>
#include <random>

using namespace vmet;
using testsupport::integer_range_value_set;
using testsupport::pair_space;
using testsupport::space_from_upper;

namespace {

template <typename Fn>
std::optional<AmalgamError::Kind> amalgam_fails(Fn&& fn) {
    try {
        fn();
    } catch (const AmalgamError& e) {
        return e.kind;
    }
    return std::nullopt;
}

// d(x1,y)=1, d(x1,y')=5, d(y,y')=4.
FiniteMetricSpace left_triangle() {
    return space_from_upper({"x1", "y", "yp"}, {Rational(1), Rational(5), Rational(4)});
}

// d(x2,y)=1, d(x2,y')=3, d(y,y')=4.
FiniteMetricSpace right_triangle() {
    return space_from_upper({"x2", "y", "yp"}, {Rational(1), Rational(3), Rational(4)});
}

}  // namespace

TEST_CASE("socket validity and orbits") {
    const FiniteMetricSpace tri = left_triangle();

    CHECK(validate_dsocket(tri, DSocket{}));
    CHECK(orbit(tri, DSocket{}) == std::vector<std::size_t>{0, 1, 2});

    // (y,1),(y',5) against d(y,y')=4: 1+5>=4, 1+4>=5, 5+4>=1.
    CHECK(validate_dsocket(tri, DSocket{{{1, Rational(1)}, {2, Rational(5)}}}));

    const FiniteMetricSpace bad = space_from_upper({"b", "bp", "z"}, {Rational(3), Rational(2), Rational(2)});
    CHECK(!validate_dsocket(bad, DSocket{{{0, Rational(1)}, {1, Rational(1)}}}));  // 1+1 < 3

    CHECK(!validate_dsocket(tri, DSocket{{{0, Rational(-1)}}}));
    CHECK_THROWS_AS(validate_dsocket(tri, DSocket{{{9, Rational(1)}}}), std::invalid_argument);

    // Bound value set constrains socket distances.
    const FiniteMetricSpace pair =
        FiniteMetricSpace::make({"a", "b"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}},
                                ValueSet::make({Rational(0), Rational(1)}));
    CHECK(!validate_dsocket(pair, DSocket{{{0, Rational(1, 2)}}}));

    const FiniteMetricSpace ones = sup_power(pair_space("a", "b", Rational(1)), 2);
    CHECK(orbit(ones, DSocket{{{0, Rational(1)}}}) == std::vector<std::size_t>{1, 2, 3});
    CHECK(orbit(ones, DSocket{{{0, Rational(2)}}}).empty());
}

TEST_CASE("one-point amalgam picks the least admissible distance") {
    const FiniteMetricSpace m1 = left_triangle();
    const FiniteMetricSpace m2 = right_triangle();

    const AmalgamResult joined = one_point_amalgam(m1, m2, integer_range_value_set(0, 5));
    CHECK(joined.admissible == std::vector<Rational>{Rational(2)});
    REQUIRE(joined.chosen.size() == 1);
    CHECK(joined.chosen[0].w == Rational(2));
    REQUIRE(joined.space.size() == 4);
    CHECK(joined.space.d(joined.space.index_of("x1"), joined.space.index_of("x2")) == Rational(2));

    CHECK(amalgam_fails([&] { one_point_amalgam(m1, m2, ValueSet::make({Rational(0), Rational(1), Rational(3),
                                                                        Rational(4), Rational(5)})); }) ==
          AmalgamError::Kind::NoAmalgam);

    const AmalgamResult small = one_point_amalgam(pair_space("x1", "y", Rational(1)), pair_space("x2", "y", Rational(1)),
                                                  integer_range_value_set(0, 2));
    CHECK(small.admissible == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK(small.chosen[0].w == Rational(1));

    // Both restrictions come back unchanged.
    for (const FiniteMetricSpace* part : {&m1, &m2}) {
        std::vector<std::size_t> idx;
        for (const auto& l : part->labels()) idx.push_back(joined.space.index_of(l));
        CHECK(joined.space.restrict(idx).matrix() == part->matrix());
    }

    // Precondition failures: wrong shape, disagreement, spectrum outside V.
    CHECK_THROWS_AS(one_point_amalgam(m1, m1, integer_range_value_set(0, 5)), std::invalid_argument);
    const FiniteMetricSpace skew = space_from_upper({"x2", "y", "yp"}, {Rational(1), Rational(3), Rational(2)});
    CHECK_THROWS_AS(one_point_amalgam(m1, skew, integer_range_value_set(0, 5)), std::invalid_argument);
    CHECK_THROWS_AS(one_point_amalgam(m1, m2, integer_range_value_set(0, 3)), std::invalid_argument);
}

TEST_CASE("a four-values value set never runs out of amalgam room") {
    const ValueSet V = integer_range_value_set(0, 3);
    REQUIRE(four_values_check(V).ok());
    const std::vector<Rational> pos{Rational(1), Rational(2), Rational(3)};

    // Single shared point.
    for (const auto& p1 : pos)
        for (const auto& p2 : pos) {
            const auto r = one_point_amalgam(pair_space("x1", "z", p1), pair_space("x2", "z", p2), V);
            CHECK(!r.admissible.empty());
        }

    // Shared pair at distance v; both side triangles must satisfy the
    // triangle inequality before the amalgam question even arises.
    const auto triangle_ok = [](const Rational& a, const Rational& b, const Rational& c) {
        return a <= b + c && b <= a + c && c <= a + b;
    };
    std::size_t cases = 0;
    for (const auto& v : pos)
        for (const auto& p1 : pos)
            for (const auto& q1 : pos)
                for (const auto& p2 : pos)
                    for (const auto& q2 : pos) {
                        if (!triangle_ok(v, p1, q1) || !triangle_ok(v, p2, q2)) continue;
                        const FiniteMetricSpace m1 = space_from_upper({"x1", "z1", "z2"}, {p1, q1, v});
                        const FiniteMetricSpace m2 = space_from_upper({"x2", "z1", "z2"}, {p2, q2, v});
                        CHECK_NOTHROW(one_point_amalgam(m1, m2, V));
                        ++cases;
                    }
    CHECK(cases > 100);
}

TEST_CASE("disjoint amalgam glues overlapping spaces") {
    const ValueSet V05 = integer_range_value_set(0, 5);
    const FiniteMetricSpace m1 = left_triangle();
    const FiniteMetricSpace m2 = right_triangle();

    const AmalgamResult glued = disjoint_amalgam(m1, m2, V05);
    REQUIRE(glued.space.size() == 4);
    CHECK(glued.space.d(glued.space.index_of("x1"), glued.space.index_of("x2")) == Rational(2));

    // Contained space: nothing to glue.
    const AmalgamResult nothing = disjoint_amalgam(m2.restrict({1, 2}), m2, V05);
    CHECK(nothing.space == m2);
    CHECK(nothing.chosen.empty());

    // Fully disjoint pairs over V={0,1}: every new distance is forced to 1.
    const AmalgamResult cross = disjoint_amalgam(pair_space("a", "b", Rational(1)), pair_space("c", "e", Rational(1)),
                                                 integer_range_value_set(0, 1));
    REQUIRE(cross.space.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK(cross.space.d(i, j) == Rational(1));
    CHECK(cross.chosen.size() == 4);  // the four cross pairs

    // Random overlapping restrictions glue back losslessly.
    std::mt19937_64 rng(5);
    const ValueSet V02 = integer_range_value_set(0, 2);
    for (int round = 0; round < 10; ++round) {
        const FiniteMetricSpace whole = testsupport::random_metric(rng, 6, {Rational(1), Rational(2)});
        const FiniteMetricSpace part1 = whole.restrict({0, 1, 2, 3});
        const FiniteMetricSpace part2 = whole.restrict({2, 3, 4, 5});
        const AmalgamResult re = disjoint_amalgam(part1, part2, V02);
        REQUIRE(re.space.size() == 6);
        for (const FiniteMetricSpace* part : {&part1, &part2}) {
            std::vector<std::size_t> idx;
            for (const auto& l : part->labels()) idx.push_back(re.space.index_of(l));
            CHECK(re.space.restrict(idx).matrix() == part->matrix());
        }
        for (const auto& w : re.space.spectrum()) CHECK(V02.contains(w));
    }
}

TEST_CASE("realizing a socket adds exactly the requested point") {
    const ValueSet V01 = integer_range_value_set(0, 1);
    const FiniteMetricSpace one = FiniteMetricSpace::make({"p0"}, {{Rational(0)}});
    const RealizeResult two = realize_socket(one, DSocket{{{0, Rational(1)}}}, V01);
    REQUIRE(two.space.size() == 2);
    CHECK(two.new_point == 1);
    CHECK(two.space.label(1) == "p1");
    CHECK(two.space.d(0, 1) == Rational(1));

    const FiniteMetricSpace tri = left_triangle();
    const RealizeResult ext = realize_socket(tri, DSocket{{{1, Rational(1)}, {2, Rational(3)}}},
                                             integer_range_value_set(0, 5), "x2");
    REQUIRE(ext.space.size() == 4);
    CHECK(ext.space.label(ext.new_point) == "x2");
    CHECK(ext.space.d(ext.space.index_of("x1"), ext.new_point) == Rational(2));
    CHECK(ext.space.restrict({0, 1, 2}).matrix() == tri.matrix());
    const auto members = orbit(ext.space, DSocket{{{1, Rational(1)}, {2, Rational(3)}}});
    CHECK(std::find(members.begin(), members.end(), ext.new_point) != members.end());

    const FiniteMetricSpace ones = sup_power(pair_space("a", "b", Rational(1)), 2);
    const RealizeResult fifth = realize_socket(ones, DSocket{{{0, Rational(1)}}}, V01);
    REQUIRE(fifth.space.size() == 5);
    for (std::size_t i = 0; i < 4; ++i) CHECK(fifth.space.d(i, 4) == Rational(1));

    CHECK(amalgam_fails([&] { realize_socket(one, DSocket{}, V01); }) == AmalgamError::Kind::InvalidSocket);
    const FiniteMetricSpace bad = space_from_upper({"b", "bp", "z"}, {Rational(3), Rational(2), Rational(2)});
    CHECK(amalgam_fails([&] {
        realize_socket(bad, DSocket{{{0, Rational(1)}, {1, Rational(1)}}}, integer_range_value_set(0, 3));
    }) == AmalgamError::Kind::InvalidSocket);
}

TEST_CASE("the approximant builder is deterministic and audited") {
    const ValueSet V01 = integer_range_value_set(0, 1);
    const UrysohnResult flat = urysohn_approximant(V01, std::nullopt, 5, 3);
    REQUIRE(flat.space.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) CHECK(flat.space.d(i, j) == Rational(1));
    CHECK(flat.realized_prefix == 4);
    CHECK(flat.log.size() == 4);

    CHECK(amalgam_fails([&] {
        urysohn_approximant(ValueSet::make({Rational(0), Rational(1), Rational(3), Rational(4), Rational(5)}),
                            std::nullopt, 4, 1);
    }) == AmalgamError::Kind::FourValuesFailure);

    const ValueSet V02 = integer_range_value_set(0, 2);
    const UrysohnResult a = urysohn_approximant(V02, std::nullopt, 14, 7);
    const UrysohnResult b = urysohn_approximant(V02, std::nullopt, 14, 7);
    CHECK(a.space == b.space);
    CHECK(a.realized_prefix == b.realized_prefix);

    const UrysohnResult c = urysohn_approximant(V02, std::nullopt, 14, 42);
    CHECK(c.space.size() == 14);
    for (const auto& w : c.space.spectrum()) CHECK(V02.contains(w));

    // Independent audit of the fairness guarantee: every valid socket over
    // the first realized_prefix points has a nonempty orbit.
    for (const UrysohnResult* r : {&a, &c}) {
        REQUIRE(r->realized_prefix >= 2);
        const std::size_t k = r->realized_prefix;
        std::vector<std::size_t> verts(k);
        for (std::size_t i = 0; i < k; ++i) verts[i] = i;
        for (std::size_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<std::size_t> vs;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) vs.push_back(i);
            std::vector<std::size_t> pick(vs.size(), 0);
            while (true) {
                DSocket s;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    s.entries.push_back({vs[i], Rational(static_cast<long>(pick[i]) + 1)});
                if (validate_dsocket(r->space, s)) CHECK(!orbit(r->space, s).empty());
                std::size_t t = pick.size();
                while (t-- > 0) {
                    if (++pick[t] < 2) break;
                    pick[t] = 0;
                }
                if (t == static_cast<std::size_t>(-1)) break;
            }
        }
    }

    // Orbit comparability at this truncation: patterns realized inside the
    // tighter orbit around p0 re-embed inside the looser one.
    for (const UrysohnResult* r : {&a, &c}) {
        const auto o1 = orbit(r->space, DSocket{{{0, Rational(1)}}});
        const auto o2 = orbit(r->space, DSocket{{{0, Rational(2)}}});
        REQUIRE(!o1.empty());
        REQUIRE(!o2.empty());
        const FiniteMetricSpace s1 = r->space.restrict(o1);
        const FiniteMetricSpace s2 = r->space.restrict(o2);
        for (std::size_t i = 0; i < s1.size(); ++i)
            for (std::size_t j = i + 1; j < s1.size(); ++j) CHECK(embeds(s1.restrict({i, j}), s2));
    }
}

TEST_CASE("rim extension checks its hypotheses in order") {
    const FiniteMetricSpace sp =
        space_from_upper({"a", "b", "x"}, {Rational(1), Rational(1, 2), Rational(1, 2)});
    const DSocket base{{{1, Rational(1, 2)}}};
    REQUIRE(orbit(sp, base) == std::vector<std::size_t>{2});

    const DSocket extended = rim_extend(sp, base, 0, Rational(1, 2));
    REQUIRE(extended.entries.size() == 2);
    CHECK(extended.entries[1].b == 0);
    CHECK(extended.entries[1].d == Rational(1, 2));
    CHECK(validate_dsocket(sp, extended));

    // a coincides with a vertex: d(a,b)=0 < r.
    CHECK(amalgam_fails([&] { rim_extend(sp, base, 1, Rational(1, 2)); }) ==
          AmalgamError::Kind::PreconditionViolated);

    // Empty socket: whole space is the orbit, conditions are vacuous.
    const FiniteMetricSpace pair = pair_space("a", "b", Rational(1));
    const DSocket solo = rim_extend(pair, DSocket{}, 0, Rational(1));
    REQUIRE(solo.entries.size() == 1);
    CHECK(solo.entries[0].b == 0);
    CHECK(solo.entries[0].d == Rational(1));

    // No orbit witness within r of a.
    const FiniteMetricSpace far = space_from_upper({"a", "b", "x"}, {Rational(2), Rational(2), Rational(1)});
    CHECK(amalgam_fails([&] { rim_extend(far, DSocket{{{1, Rational(1)}}}, 0, Rational(1)); }) ==
          AmalgamError::Kind::PreconditionViolated);

    // Invalid socket fails before anything else.
    const FiniteMetricSpace bad = space_from_upper({"b", "bp", "z"}, {Rational(3), Rational(2), Rational(2)});
    CHECK(amalgam_fails([&] {
        rim_extend(bad, DSocket{{{0, Rational(1)}, {1, Rational(1)}}}, 2, Rational(1));
    }) == AmalgamError::Kind::PreconditionViolated);
}

TEST_CASE("holes check removes balls and inspects the remainder") {
    const FiniteMetricSpace pair = pair_space("a", "b", Rational(1));

    const HolesReport boundary = holes_check(pair, {0, 1}, {Rational(1, 2), Rational(1, 2)});
    CHECK(boundary.ok());
    CHECK(boundary.removed == std::vector<std::size_t>{0, 1});
    CHECK(boundary.sockets_checked == 0);  // nothing left to check

    CHECK(amalgam_fails([&] { holes_check(pair, {0, 1}, {Rational(2, 3), Rational(1, 2)}); }) ==
          AmalgamError::Kind::HypothesisViolated);

    const HolesReport everything = holes_check(pair, {}, {});
    CHECK(everything.ok());
    CHECK(everything.removed.empty());
    CHECK(everything.sockets_checked == 3);  // (a,1), (b,1), and the pair socket
    CHECK(everything.realized == 2);
    CHECK(everything.empty_orbit == 1);  // two points cannot witness the pair socket
    CHECK(everything.rim_pending == 0);

    CHECK_THROWS_AS(holes_check(pair, {0}, {Rational(1), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(holes_check(pair, {0}, {Rational(0)}), std::invalid_argument);

    const UrysohnResult big = urysohn_approximant(integer_range_value_set(0, 2), std::nullopt, 10, 7);
    const HolesReport deep = holes_check(big.space, {0}, {Rational(1, 2)}, 2);
    CHECK(deep.ok());
    CHECK(deep.removed == std::vector<std::size_t>{0});
    CHECK(deep.sockets_checked > 0);
}

TEST_CASE("orbit diameter stays within twice the least socket distance") {
    const FiniteMetricSpace sp = space_from_upper(
        {"b", "bp", "s", "sp"},
        {Rational(1),                               // b-bp
         Rational(1), Rational(1),                  // b-s, b-sp
         Rational(1, 2), Rational(1, 2),            // bp-s, bp-sp
         Rational(1)});                             // s-sp
    const OrbitDiameter od = orbit_diameter_check(sp, DSocket{{{0, Rational(1)}, {1, Rational(1, 2)}}});
    CHECK(od.ell == Rational(1, 2));
    CHECK(od.within_bound);
    CHECK(od.orbit_points == std::vector<std::size_t>{2, 3});

    const FiniteMetricSpace pair = pair_space("a", "b", Rational(1));
    const OrbitDiameter single = orbit_diameter_check(pair, DSocket{{{0, Rational(1)}}});
    CHECK(single.ell == Rational(1));
    CHECK(single.within_bound);
    CHECK(single.orbit_points == std::vector<std::size_t>{1});

    CHECK(amalgam_fails([&] {
        orbit_diameter_check(pair_space("a", "b", Rational(2)), DSocket{{{0, Rational(1)}}});
    }) == AmalgamError::Kind::EmptyOrbit);

    const FiniteMetricSpace bad = space_from_upper({"b", "bp", "z"}, {Rational(3), Rational(2), Rational(2)});
    CHECK(amalgam_fails([&] {
        orbit_diameter_check(bad, DSocket{{{0, Rational(1)}, {1, Rational(1)}}});
    }) == AmalgamError::Kind::InvalidSocket);

    // On an approximant, every socket with nonempty orbit meets the bound.
    const UrysohnResult r = urysohn_approximant(integer_range_value_set(0, 2), std::nullopt, 12, 7);
    for (const Rational& d0 : {Rational(1), Rational(2)}) {
        const DSocket s{{{0, d0}}};
        const OrbitDiameter check = orbit_diameter_check(r.space, s);
        CHECK(check.ell == d0);
        CHECK(check.within_bound);
    }
}
