#include "vmet/value_set.hpp"

#include <algorithm>

#ifdef VMET_HAVE_OPENMP
#include <omp.h>
#endif

namespace vmet {

ValueSet ValueSet::make(std::vector<Rational> values) {
    for (const auto& v : values)
        if (v.is_negative())
            throw BadValueSet(Error::NegativeValue, "value set: negative value " + v.str());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty() || !values.front().is_zero())
        throw BadValueSet(Error::MissingZero, "value set: 0 must be a member");
    return ValueSet(std::move(values));
}

bool ValueSet::contains(const Rational& v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

std::optional<Rational> ValueSet::least_geq(const Rational& x) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), x);
    if (it == values_.end()) return std::nullopt;
    return *it;
}

std::optional<Rational> ValueSet::least_in_closed(const Rational& lo, const Rational& hi) const {
    auto v = least_geq(lo);
    if (!v || *v > hi) return std::nullopt;
    return v;
}

std::optional<Rational> ValueSet::greatest_lt(const Rational& x) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return std::nullopt;
    return *(it - 1);
}

bool ValueSet::any_in_open(const Rational& lo, const Rational& hi) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), lo);
    return it != values_.end() && *it < hi;
}

Interval phi_interval(const Rational& u1, const Rational& u2, const Rational& u1p, const Rational& u2p) {
    for (const Rational* u : {&u1, &u2, &u1p, &u2p})
        if (u->is_negative()) throw std::invalid_argument("phi_interval: negative argument");
    return Interval{max((u1 - u2).abs(), (u1p - u2p).abs()), min(u1 + u2, u1p + u2p)};
}

bool rho(const ValueSet& V, const Rational& u1, const Rational& u2, const Rational& u1p, const Rational& u2p) {
    const Interval i = phi_interval(u1, u2, u1p, u2p);
    if (i.empty()) return false;
    auto v = V.least_geq(i.lo);
    return v.has_value() && *v <= i.hi;
}

namespace {

// Violation at the loop key (i1, i1p, i2p, i2): rho holds for the quadruple
// (u1, u2, u1p, u2p) but fails after swapping the middle arguments.
bool violates(const std::vector<Rational>& v, std::size_t i1, std::size_t i1p, std::size_t i2p, std::size_t i2,
              const ValueSet& V) {
    return rho(V, v[i1], v[i2], v[i1p], v[i2p]) && !rho(V, v[i1], v[i1p], v[i2], v[i2p]);
}

}  // namespace

FourValuesResult four_values_check(const ValueSet& V) {
    const auto& v = V.values();
    const std::size_t n = v.size();
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i1p = 0; i1p < n; ++i1p)
            for (std::size_t i2p = 0; i2p < n; ++i2p)
                for (std::size_t i2 = 0; i2 < n; ++i2)
                    if (violates(v, i1, i1p, i2p, i2, V))
                        return FourValuesResult{Quad{v[i1], v[i2], v[i1p], v[i2p]}};
    return {};
}

FourValuesResult four_values_check_parallel(const ValueSet& V) {
    const auto& v = V.values();
    const long n = static_cast<long>(v.size());
    const long slabs = n * n;  // one slab per (i1, i1p)
    std::vector<long> found(static_cast<std::size_t>(slabs), -1);

#ifdef VMET_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long s = 0; s < slabs; ++s) {
        const std::size_t i1 = static_cast<std::size_t>(s / n);
        const std::size_t i1p = static_cast<std::size_t>(s % n);
        for (long i2p = 0; i2p < n; ++i2p) {
            for (long i2 = 0; i2 < n; ++i2) {
                if (violates(v, i1, i1p, static_cast<std::size_t>(i2p), static_cast<std::size_t>(i2), V)) {
                    found[static_cast<std::size_t>(s)] = i2p * n + i2;
                    goto slab_done;
                }
            }
        }
    slab_done:;
    }

    for (long s = 0; s < slabs; ++s) {
        const long inner = found[static_cast<std::size_t>(s)];
        if (inner >= 0) {
            const auto i1 = static_cast<std::size_t>(s / n);
            const auto i1p = static_cast<std::size_t>(s % n);
            const auto i2p = static_cast<std::size_t>(inner / n);
            const auto i2 = static_cast<std::size_t>(inner % n);
            return FourValuesResult{Quad{v[i1], v[i2], v[i1p], v[i2p]}};
        }
    }
    return {};
}

SufficientConditionResult sufficient_condition_check(const ValueSet& V) {
    const auto& v = V.values();
    for (const auto& u1 : v)
        for (const auto& u1p : v)
            for (const auto& u2 : v)
                for (const auto& u2p : v) {
                    const Rational lo = u1 - u1p;
                    const Rational hi = u2 + u2p;
                    if (lo > hi) continue;
                    auto w = V.least_geq(lo);
                    if (!w || *w > hi) return {false, Quad{u1, u2, u1p, u2p}};
                }
    return {};
}

Rational residuation(const ValueSet& V, const Rational& x, const Rational& y) {
    if (!V.contains(x)) throw NotInSet("residuation: " + x.str() + " not in value set");
    if (!V.contains(y)) throw NotInSet("residuation: " + y.str() + " not in value set");
    if (x > y) throw OrderViolation("residuation: needs x <= y, got " + x.str() + " > " + y.str());
    auto r = V.least_geq(y - x);
    // y <= x + max(V) always holds since y is a member, so r exists.
    return *r;
}

DvResult dv_distance(const ValueSet& V) {
    DvResult res;
    res.points = V.values();
    const std::size_t n = res.points.size();
    res.table.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            res.table[i][j] = *V.least_geq((res.points[i] - res.points[j]).abs());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (res.table[i][k] > res.table[i][j] + res.table[j][k]) {
                    res.failure = std::array<Rational, 3>{res.points[i], res.points[j], res.points[k]};
                    return res;
                }
    return res;
}

ValueSet initial_segment(const ValueSet& V, const Rational& ell) {
    std::vector<Rational> keep;
    for (const auto& v : V.values())
        if (v <= ell) keep.push_back(v);
    if (keep.empty() || !keep.front().is_zero()) keep.insert(keep.begin(), Rational(0));
    return ValueSet::make(std::move(keep));
}

GapReport gap_report(const ValueSet& V) {
    GapReport rep;
    const auto pos = V.positives();
    const Rational two(2);
    for (const auto& w : pos)
        rep.entries.push_back({w, !V.any_in_open(w / two, w)});
    std::size_t i = 0;
    while (i < pos.size()) {
        std::size_t j = i;
        // Extend the run while the next element sits above half of itself,
        // i.e. no factor-two gap separates pos[j] from pos[j+1].
        while (j + 1 < pos.size() && pos[j] > pos[j + 1] / two) ++j;
        rep.runs.emplace_back(pos[i], pos[j]);
        i = j + 1;
    }
    return rep;
}

}  // namespace vmet
