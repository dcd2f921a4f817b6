#include "vmet/divide.hpp"

#include "vmet/ultra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vmet {

namespace {

using Kind = DivideError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& what) { throw DivideError(kind, what); }

void check_point(const FiniteMetricSpace& space, std::size_t p) {
    if (p >= space.size()) throw SpaceError(SpaceError::Kind::UnknownPoint, "divide: point index out of range", p);
}

// Ring index of a point at distance dist inside the open ball of radius l:
// the n >= 1 with l(n-1)/n <= dist < ln/(n+1).
long ring_index(const Rational& dist, const Rational& l) {
    return (l / (l - dist)).floor().to_long();
}

}  // namespace

std::vector<std::size_t> ring(const FiniteMetricSpace& space, std::size_t c, const Rational& lo, const Rational& hi) {
    check_point(space, c);
    if (lo.is_negative() || !(lo < hi)) fail(Kind::BadBounds, "ring requires 0 <= lo < hi");
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < space.size(); ++x)
        if (lo <= space.d(c, x) && space.d(c, x) < hi) out.push_back(x);
    return out;
}

std::vector<std::size_t> ring(const FiniteMetricSpace& space, const RingSpec& spec) {
    return ring(space, spec.center, spec.lo, spec.hi);
}

Stripes stripes(const FiniteMetricSpace& space, std::size_t c, const Rational& l) {
    check_point(space, c);
    if (!l.is_positive()) fail(Kind::BadBounds, "stripes requires l > 0");
    Stripes out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (!(space.d(c, x) < l)) continue;
        (ring_index(space.d(c, x), l) % 2 == 0 ? out.even : out.odd).push_back(x);
    }
    return out;
}

BallCover ball_cover(const FiniteMetricSpace& space, const Rational& Lambda, const std::vector<std::size_t>* order) {
    if (!Lambda.is_positive()) fail(Kind::BadBounds, "cover scale must be positive");
    const std::size_t n = space.size();
    std::vector<std::size_t> enumeration;
    if (order) {
        enumeration = *order;
        std::vector<char> seen(n, 0);
        if (enumeration.size() != n) throw std::invalid_argument("cover order must list every point once");
        for (std::size_t p : enumeration) {
            if (p >= n || seen[p]) throw std::invalid_argument("cover order must list every point once");
            seen[p] = 1;
        }
    } else {
        enumeration.resize(n);
        for (std::size_t i = 0; i < n; ++i) enumeration[i] = i;
    }

    std::set<Rational> realized;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) realized.insert(space.d(i, j));

    const Rational cap = Lambda / Rational(2);
    BallCover cover;
    std::vector<char> covered(n, 0);
    std::size_t covered_count = 0;
    while (covered_count < n) {
        std::size_t c = SIZE_MAX;
        for (std::size_t p : enumeration)
            if (!covered[p]) {
                c = p;
                break;
            }

        // Subgaps of (0, cap) cut by realized distances and used radii;
        // widest first, higher gap on equal width. A midpoint radius avoids
        // every boundary by construction.
        std::vector<Rational> bounds{Rational(0), cap};
        for (const Rational& v : realized)
            if (v.is_positive() && v < cap) bounds.push_back(v);
        for (const Rational& r : cover.radii)
            if (r < cap) bounds.push_back(r);
        std::sort(bounds.begin(), bounds.end());
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
        std::vector<std::pair<Rational, Rational>> gaps;
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) gaps.emplace_back(bounds[k], bounds[k + 1]);
        std::stable_sort(gaps.begin(), gaps.end(), [](const auto& g, const auto& h) {
            const Rational wg = g.second - g.first, wh = h.second - h.first;
            if (wg != wh) return wh < wg;
            return h.first < g.first;
        });

        std::optional<Rational> radius;
        for (const auto& [lo, hi] : gaps) {
            const Rational mid = (lo + hi) / Rational(2);
            bool disjoint = true;
            for (std::size_t x = 0; x < n && disjoint; ++x)
                if (covered[x] && space.d(c, x) < mid) disjoint = false;
            if (disjoint) {
                radius = mid;
                break;
            }
        }
        if (!radius) {
            std::size_t blocker = SIZE_MAX;
            for (std::size_t x = 0; x < n; ++x)
                if (covered[x] && (blocker == SIZE_MAX || space.d(c, x) < space.d(c, blocker))) blocker = x;
            fail(Kind::CannotSeparate, "no admissible radius around " + space.labels()[c] + " (blocked by " +
                                           (blocker == SIZE_MAX ? std::string("nothing") : space.labels()[blocker]) +
                                           ")");
        }
        for (std::size_t x = 0; x < n; ++x)
            if (space.d(c, x) < *radius) {
                covered[x] = 1;
                ++covered_count;
            }
        cover.centers.push_back(c);
        cover.radii.push_back(*radius);
    }

    // The invariants are enforced by construction; re-verify before returning.
    for (const Rational& r : cover.radii) {
        if (realized.count(r)) throw std::logic_error("cover radius equals a realized distance");
        if (!(r + r < Lambda)) throw std::logic_error("cover radius exceeds half the scale");
    }
    std::vector<std::size_t> owner(n, SIZE_MAX);
    for (std::size_t k = 0; k < cover.centers.size(); ++k)
        for (std::size_t x = 0; x < n; ++x)
            if (space.d(cover.centers[k], x) < cover.radii[k]) {
                if (owner[x] != SIZE_MAX) throw std::logic_error("cover balls overlap");
                owner[x] = k;
            }
    for (std::size_t x = 0; x < n; ++x)
        if (owner[x] == SIZE_MAX) throw std::logic_error("cover misses a point");
    return cover;
}

Stripes divisibility_partition(const FiniteMetricSpace& space, const BallCover& cover) {
    Stripes out;
    std::vector<char> placed(space.size(), 0);
    for (std::size_t k = 0; k < cover.centers.size(); ++k) {
        const Stripes local = stripes(space, cover.centers[k], cover.radii[k]);
        for (std::size_t x : local.even)
            if (!placed[x]) {
                placed[x] = 1;
                out.even.push_back(x);
            }
        for (std::size_t x : local.odd)
            if (!placed[x]) {
                placed[x] = 1;
                out.odd.push_back(x);
            }
    }
    for (std::size_t x = 0; x < space.size(); ++x)
        if (!placed[x]) throw std::logic_error("cover does not reach every point");
    std::sort(out.even.begin(), out.even.end());
    std::sort(out.odd.begin(), out.odd.end());
    return out;
}

UnboundedPartition unbounded_partition(const FiniteMetricSpace& space, std::size_t a0) {
    check_point(space, a0);
    const std::size_t n = space.size();
    UnboundedPartition out;
    out.r_seq.push_back(Rational(0));
    if (n >= 2) {
        const Rational g = *space.min_positive_distance();
        for (;;) {
            const Rational& r = out.r_seq.back();
            std::size_t next = SIZE_MAX;
            for (std::size_t x = 0; x < n; ++x) {
                if (!(space.d(a0, x) > r + r)) continue;
                if (next == SIZE_MAX || space.d(a0, x) < space.d(a0, next)) next = x;
            }
            if (next == SIZE_MAX) break;
            out.a_seq.push_back(next);
            out.r_seq.push_back(space.d(a0, next) + r + g);
        }
    }
    out.steps = out.a_seq.size();

    // Ring k is [r_k, r_{k+1}); the last ring has no upper bound.
    const std::size_t rings = out.r_seq.size();
    std::vector<bool> nonempty(rings, false);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t k = rings - 1;
        while (k > 0 && space.d(a0, x) < out.r_seq[k]) --k;
        nonempty[k] = true;
        (k % 2 == 0 ? out.even : out.odd).push_back(x);
    }
    const std::size_t realized_rings = std::count(nonempty.begin(), nonempty.end(), true);
    if (realized_rings < 2)
        fail(Kind::Degenerate, "ring construction produced fewer than 2 nonempty rings");
    return out;
}

UltraSpecPartition ultra_spec_partition(const FiniteMetricSpace& space, std::size_t a,
                                        const std::vector<Rational>& r_seq) {
    check_point(space, a);
    if (!is_ultrametric(space))
        throw UltraError(UltraError::Kind::NotUltrametric, "spectrum partition requires an ultrametric space");
    if (r_seq.empty() || !r_seq.front().is_zero()) fail(Kind::BadSequence, "radius sequence must start at 0");
    for (std::size_t i = 0; i + 1 < r_seq.size(); ++i)
        if (!(r_seq[i] < r_seq[i + 1])) fail(Kind::BadSequence, "radius sequence must strictly increase");
    if (r_seq.size() < 2) fail(Kind::BadSequence, "radius sequence needs an upper bound");

    const Rational s = r_seq.back();
    const std::size_t n = space.size();
    UltraSpecPartition out;
    std::vector<char> covered(n, 0);
    std::size_t covered_count = 0;
    while (covered_count < n) {
        std::size_t c = a;
        if (covered[a]) {
            c = SIZE_MAX;
            for (std::size_t x = 0; x < n; ++x)
                if (!covered[x]) {
                    c = x;
                    break;
                }
        }
        out.centers.push_back(c);
        for (std::size_t x = 0; x < n; ++x) {
            if (covered[x] || !(space.d(c, x) < s)) continue;
            covered[x] = 1;
            ++covered_count;
            std::size_t i = r_seq.size() - 2;
            while (i > 0 && space.d(c, x) < r_seq[i]) --i;
            (i % 2 == 0 ? out.even : out.odd).push_back(x);
        }
    }
    std::sort(out.even.begin(), out.even.end());
    std::sort(out.odd.begin(), out.odd.end());
    return out;
}

namespace {

// Does the pattern (given by its distance matrix) embed into the space with
// point `anchor_p` pinned to `anchor_t`?
bool anchored_embeds(const std::vector<std::vector<Rational>>& pat, const FiniteMetricSpace& space,
                     std::size_t anchor_p, std::size_t anchor_t) {
    const std::size_t s = pat.size(), n = space.size();
    std::vector<std::size_t> img(s, SIZE_MAX);
    std::vector<char> used(n, 0);
    img[anchor_p] = anchor_t;
    used[anchor_t] = 1;
    auto dfs = [&](auto&& self, std::size_t p) -> bool {
        while (p < s && img[p] != SIZE_MAX) ++p;
        if (p == s) return true;
        for (std::size_t t = 0; t < n; ++t) {
            if (used[t]) continue;
            bool ok = true;
            for (std::size_t q = 0; q < s && ok; ++q)
                if (img[q] != SIZE_MAX && space.d(img[q], t) != pat[q][p]) ok = false;
            if (!ok) continue;
            img[p] = t;
            used[t] = 1;
            if (self(self, p + 1)) return true;
            img[p] = SIZE_MAX;
            used[t] = 0;
        }
        return false;
    };
    return dfs(dfs, 0);
}

// All metric distance matrices of the given size with entries from `values`.
std::vector<std::vector<std::vector<Rational>>> patterns_of_size(std::size_t s,
                                                                 const std::vector<Rational>& values) {
    std::vector<std::vector<std::vector<Rational>>> out;
    if (s < 2 || values.empty()) return out;
    const std::size_t pairs = s * (s - 1) / 2;
    std::vector<std::size_t> pick(pairs, 0);
    for (;;) {
        std::vector<std::vector<Rational>> mat(s, std::vector<Rational>(s, Rational(0)));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j) mat[i][j] = mat[j][i] = values[pick[idx++]];
        bool metric = true;
        for (std::size_t i = 0; i < s && metric; ++i)
            for (std::size_t j = 0; j < s && metric; ++j)
                for (std::size_t k = 0; k < s && metric; ++k)
                    if (mat[i][k] > mat[i][j] + mat[j][k]) metric = false;
        if (metric) out.push_back(std::move(mat));
        std::size_t pos = pairs;
        while (pos > 0) {
            --pos;
            if (++pick[pos] < values.size()) break;
            pick[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

}  // namespace

std::vector<std::size_t> sub_isolated_points(const FiniteMetricSpace& space, const ValueSet& W,
                                             const std::vector<std::size_t>& pattern_sizes) {
    const std::size_t n = space.size();
    std::vector<Rational> scales;
    for (const Rational& v : space.spectrum())
        if (v.is_positive()) scales.push_back(v);

    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < n; ++a) {
        bool sub_isolated = true;
        for (const Rational& eps : scales) {
            std::vector<Rational> values;
            for (const Rational& w : W.values())
                if (w.is_positive() && w <= eps) values.push_back(w);
            bool found_pattern = false;
            for (std::size_t s : pattern_sizes) {
                for (const auto& pat : patterns_of_size(s, values)) {
                    bool through_a = false;
                    for (std::size_t p = 0; p < s && !through_a; ++p)
                        if (anchored_embeds(pat, space, p, a)) through_a = true;
                    if (!through_a) {
                        found_pattern = true;
                        break;
                    }
                }
                if (found_pattern) break;
            }
            if (!found_pattern) {
                sub_isolated = false;
                break;
            }
        }
        if (sub_isolated) out.push_back(a);
    }
    return out;
}

ScatterResult scattered_fixpoint(const FiniteMetricSpace& space, const ValueSet& W,
                                 const std::vector<std::size_t>& pattern_sizes) {
    ScatterResult result;
    std::vector<std::size_t> current(space.size());
    for (std::size_t i = 0; i < current.size(); ++i) current[i] = i;
    result.chain.push_back(current);
    for (;;) {
        const FiniteMetricSpace sub = space.restrict(current);
        const std::vector<std::size_t> iso = sub_isolated_points(sub, W, pattern_sizes);
        if (iso.empty()) break;
        std::vector<std::size_t> next;
        std::size_t k = 0;
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (k < iso.size() && iso[k] == i)
                ++k;
            else
                next.push_back(current[i]);
        }
        current = std::move(next);
        result.chain.push_back(current);
    }
    result.sub_scattered = result.chain.back().empty();
    return result;
}

DivisibilityReport divisibility_experiment(const FiniteMetricSpace& space, const Partition& partition) {
    if (!is_partition_of(partition, space.size()))
        throw std::invalid_argument("experiment requires a partition of the point set");
    DivisibilityReport report;
    report.divisible = true;
    for (const auto& block : partition.blocks) {
        DivisibilityReport::Block entry;
        entry.points = block;
        const auto found = isometric_embeddings(space, space.restrict(block), 1);
        entry.contains_copy = !found.empty();
        if (entry.contains_copy) {
            report.divisible = false;
            Embedding witness;
            witness.image.reserve(found[0].image.size());
            for (std::size_t t : found[0].image) witness.image.push_back(block[t]);
            entry.witness = std::move(witness);
        }
        report.blocks.push_back(std::move(entry));
    }
    return report;
}

}  // namespace vmet
