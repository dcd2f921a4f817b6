#include "vmet/space.hpp"

#include <algorithm>
#include <set>

namespace vmet {

FiniteMetricSpace FiniteMetricSpace::make(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
                                          std::optional<ValueSet> value_set) {
    const std::size_t n = labels.size();
    if (dist.size() != n)
        throw SpaceError(SpaceError::Kind::ShapeMismatch, "space: matrix has " + std::to_string(dist.size()) +
                                                              " rows for " + std::to_string(n) + " labels");
    for (std::size_t i = 0; i < n; ++i)
        if (dist[i].size() != n)
            throw SpaceError(SpaceError::Kind::ShapeMismatch, "space: row " + std::to_string(i) + " has wrong length",
                             i);

    FiniteMetricSpace s;
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.index_.emplace(labels[i], i).second)
            throw SpaceError(SpaceError::Kind::DuplicateLabel, "space: duplicate label '" + labels[i] + "'", i);
    }
    s.labels_ = std::move(labels);
    s.dist_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.dist_.push_back(dist[i][j]);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (s.d(i, j) != s.d(j, i))
                throw SpaceError(SpaceError::Kind::Symmetry,
                                 "space: d(" + s.labels_[i] + "," + s.labels_[j] + ") is not symmetric", i, j);
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.d(i, i).is_zero())
            throw SpaceError(SpaceError::Kind::Separation, "space: d(" + s.labels_[i] + ",.) nonzero on the diagonal",
                             i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            if (!s.d(i, j).is_positive())
                throw SpaceError(SpaceError::Kind::Separation,
                                 "space: d(" + s.labels_[i] + "," + s.labels_[j] + ") must be positive", i, j);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (s.d(i, k) > s.d(i, j) + s.d(j, k))
                    throw SpaceError(SpaceError::Kind::Triangle,
                                     "space: triangle fails on (" + s.labels_[i] + "," + s.labels_[j] + "," +
                                         s.labels_[k] + ")",
                                     i, j, k);
    if (value_set) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!value_set->contains(s.d(i, j)))
                    throw SpaceError(SpaceError::Kind::Spectrum,
                                     "space: d(" + s.labels_[i] + "," + s.labels_[j] + ") = " + s.d(i, j).str() +
                                         " outside the value set",
                                     i, j);
        s.value_set_ = std::move(value_set);
    }
    return s;
}

std::size_t FiniteMetricSpace::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        throw SpaceError(SpaceError::Kind::UnknownPoint, "space: unknown point '" + label + "'");
    return it->second;
}

std::optional<std::size_t> FiniteMetricSpace::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<Rational>> FiniteMetricSpace::matrix() const {
    std::vector<std::vector<Rational>> m(size(), std::vector<Rational>(size(), Rational(0)));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) m[i][j] = d(i, j);
    return m;
}

std::vector<Rational> FiniteMetricSpace::spectrum() const {
    std::set<Rational> vals;
    if (size() > 0) vals.insert(Rational(0));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) vals.insert(d(i, j));
    return {vals.begin(), vals.end()};
}

std::vector<Rational> FiniteMetricSpace::spectrum_at(std::size_t i) const {
    if (i >= size()) throw SpaceError(SpaceError::Kind::UnknownPoint, "space: point index out of range", i);
    std::set<Rational> vals;
    for (std::size_t j = 0; j < size(); ++j) vals.insert(d(i, j));
    return {vals.begin(), vals.end()};
}

Rational FiniteMetricSpace::diameter() const {
    Rational best(0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) best = max(best, d(i, j));
    return best;
}

std::optional<Rational> FiniteMetricSpace::min_positive_distance() const {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (!best || d(i, j) < *best) best = d(i, j);
    return best;
}

FiniteMetricSpace FiniteMetricSpace::restrict(const std::vector<std::size_t>& points) const {
    std::vector<std::string> labels;
    labels.reserve(points.size());
    std::vector<std::vector<Rational>> dist(points.size(), std::vector<Rational>(points.size()));
    for (std::size_t a = 0; a < points.size(); ++a) {
        if (points[a] >= size())
            throw SpaceError(SpaceError::Kind::UnknownPoint, "restrict: point index out of range", points[a]);
        labels.push_back(label(points[a]));
        for (std::size_t b = 0; b < points.size(); ++b) dist[a][b] = d(points[a], points[b]);
    }
    return make(std::move(labels), std::move(dist), value_set_);
}

FiniteMetricSpace sup_product(const std::vector<FiniteMetricSpace>& factors) {
    if (factors.empty()) throw SpaceError(SpaceError::Kind::EmptyFactor, "sup_product: no factors");
    std::size_t total = 1;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (factors[f].size() == 0)
            throw SpaceError(SpaceError::Kind::EmptyFactor, "sup_product: factor " + std::to_string(f) + " is empty",
                             f);
        total *= factors[f].size();
    }

    // Tuples in lexicographic order, first factor most significant.
    std::vector<std::vector<std::size_t>> tuples;
    tuples.reserve(total);
    std::vector<std::size_t> cur(factors.size(), 0);
    for (std::size_t t = 0; t < total; ++t) {
        tuples.push_back(cur);
        for (std::size_t f = factors.size(); f-- > 0;) {
            if (++cur[f] < factors[f].size()) break;
            cur[f] = 0;
        }
    }

    std::vector<std::string> labels;
    labels.reserve(total);
    for (const auto& tup : tuples) {
        std::string l = "(";
        for (std::size_t f = 0; f < tup.size(); ++f) {
            if (f) l += ",";
            l += factors[f].label(tup[f]);
        }
        l += ")";
        labels.push_back(std::move(l));
    }

    std::vector<std::vector<Rational>> dist(total, std::vector<Rational>(total));
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = a + 1; b < total; ++b) {
            Rational m(0);
            for (std::size_t f = 0; f < factors.size(); ++f)
                m = max(m, factors[f].d(tuples[a][f], tuples[b][f]));
            dist[a][b] = dist[b][a] = m;
        }

    std::optional<ValueSet> vs;
    {
        std::vector<Rational> union_vals;
        bool all_bound = true;
        for (const auto& f : factors) {
            if (!f.value_set()) {
                all_bound = false;
                break;
            }
            const auto& v = f.value_set()->values();
            union_vals.insert(union_vals.end(), v.begin(), v.end());
        }
        if (all_bound && !factors.empty()) vs = ValueSet::make(std::move(union_vals));
    }
    return FiniteMetricSpace::make(std::move(labels), std::move(dist), std::move(vs));
}

FiniteMetricSpace sup_power(const FiniteMetricSpace& base, std::size_t n) {
    if (n == 0) throw SpaceError(SpaceError::Kind::EmptyFactor, "sup_power: exponent must be >= 1");
    return sup_product(std::vector<FiniteMetricSpace>(n, base));
}

std::vector<CombinatorialLine> combinatorial_lines(const FiniteMetricSpace& alphabet, std::size_t n) {
    if (alphabet.size() == 0) throw SpaceError(SpaceError::Kind::EmptyFactor, "combinatorial_lines: empty alphabet");
    const std::size_t k = alphabet.size();
    std::vector<CombinatorialLine> lines;

    // Patterns over {moving, 0, .., k-1} per coordinate, lexicographic with
    // "moving" first; skip the all-fixed patterns (they are single points).
    // Distinct patterns can realize the same point set (always when k = 1),
    // so keep only the first pattern per realized set.
    std::set<std::vector<std::vector<std::size_t>>> seen;
    std::vector<std::size_t> pat(n, 0);  // 0 = moving, 1..k = fixed to alphabet point -1
    const std::size_t npat_total = [&] {
        std::size_t p = 1;
        for (std::size_t i = 0; i < n; ++i) p *= (k + 1);
        return p;
    }();
    for (std::size_t t = 0; t < npat_total; ++t) {
        bool has_moving = false;
        for (auto c : pat)
            if (c == 0) has_moving = true;
        if (has_moving) {
            CombinatorialLine line;
            line.fixed.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                line.fixed[i] = pat[i] == 0 ? std::optional<std::size_t>{} : std::optional<std::size_t>{pat[i] - 1};
            for (std::size_t a = 0; a < k; ++a) {
                std::vector<std::size_t> tuple(n);
                for (std::size_t i = 0; i < n; ++i) tuple[i] = pat[i] == 0 ? a : pat[i] - 1;
                line.points.push_back(std::move(tuple));
            }
            if (seen.insert(line.points).second) lines.push_back(std::move(line));
        }
        for (std::size_t i = n; i-- > 0;) {
            if (++pat[i] <= k) break;
            pat[i] = 0;
        }
    }
    return lines;
}

FiniteMetricSpace chain_space(const ValueSet& V, const Rational& ell, std::size_t n) {
    if (n == 0) throw SpaceError(SpaceError::Kind::ShapeMismatch, "chain_space: n must be >= 1");
    if (!ell.is_positive() || !V.contains(ell))
        throw SpaceError(SpaceError::Kind::ValueSetTooSparse, "chain_space: ell must be a positive member of V");

    const Rational step = ell / Rational(static_cast<long>(n));
    std::vector<Rational> a(n + 1, Rational(0));  // a[0] = 0, a[n] = ell
    std::vector<Rational> eps(n + 1, Rational(0));
    a[n] = ell;
    for (std::size_t kk = 1; kk < n; ++kk) {
        const Rational target = step * Rational(static_cast<long>(kk));
        // Ceiling on the slack: smallest split sum; no constraint for k = 1.
        std::optional<Rational> cap;
        for (std::size_t i = 1; i + i <= kk; ++i) {
            const Rational sum = eps[i] + eps[kk - i];
            if (!cap || sum < *cap) cap = sum;
        }
        const Rational upper = target + step;  // keeps every step below 2 ell / n
        std::optional<Rational> pick;
        for (const auto& v : V.values()) {
            if (v < target) continue;
            if (v >= upper) break;
            if (cap && v - target > *cap) break;  // larger v only worsens the slack
            pick = v;
            break;
        }
        if (!pick)
            throw SpaceError(SpaceError::Kind::ValueSetTooSparse,
                             "chain_space: no admissible value near " + target.str(), kk);
        a[kk] = *pick;
        eps[kk] = *pick - target;
    }

    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> dist(n + 1, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) dist[i][j] = a[i > j ? i - j : j - i];
    // Validation (triangle and spectrum) happens in make().
    return FiniteMetricSpace::make(std::move(labels), std::move(dist), V);
}

FiniteMetricSpace example_space_mn(std::size_t N) {
    std::vector<std::pair<std::size_t, std::size_t>> pts = {{0, 0}};
    for (std::size_t n = 2; n <= N; ++n)
        for (std::size_t m = 1; m < n; ++m) pts.emplace_back(m, n);

    auto dval = [](const std::pair<std::size_t, std::size_t>& a, const std::pair<std::size_t, std::size_t>& b) {
        auto frac = [](const std::pair<std::size_t, std::size_t>& p) {
            return Rational(static_cast<long>(p.first), static_cast<long>(p.second));
        };
        if (a == b) return Rational(0);
        if (a.second == 0) return frac(b);  // a is the origin
        if (b.second == 0) return frac(a);
        if (a.second == b.second) {
            long diff = static_cast<long>(a.first) - static_cast<long>(b.first);
            return Rational(diff < 0 ? -diff : diff, static_cast<long>(a.second));
        }
        return frac(a) + frac(b);
    };

    std::vector<std::string> labels;
    for (const auto& p : pts)
        labels.push_back("(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")");
    std::vector<std::vector<Rational>> dist(pts.size(), std::vector<Rational>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) dist[i][j] = dval(pts[i], pts[j]);
    return FiniteMetricSpace::make(std::move(labels), std::move(dist));
}

}  // namespace vmet
