// Acceptance gate: eleven numbered criteria, one pass/fail line each.
// Usage: acceptance [N]  (no argument = run all).  Exit 0 only when every
// requested criterion passes, including its time budget.

#include "vmet/amalgam.hpp"
#include "vmet/connect.hpp"
#include "vmet/divide.hpp"
#include "vmet/embed.hpp"
#include "vmet/space.hpp"
#include "vmet/ultra.hpp"
#include "vmet/value_set.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace vmet;

namespace {

struct Outcome {
    bool pass;
    std::string note;
};

// ---------------------------------------------------------------- helpers

std::vector<std::string> point_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return labels;
}

FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t n, const std::vector<Rational>& pool) {
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = pool[pick(rng)];
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) d[i][j] = min(d[i][j], d[i][k] + d[k][j]);
    return FiniteMetricSpace::make(point_labels(n), d);
}

void split_ultra(std::mt19937_64& rng, std::vector<std::vector<Rational>>& d, const std::vector<std::size_t>& pts,
                 const std::vector<Rational>& levels, std::size_t level) {
    if (pts.size() <= 1 || level >= levels.size()) return;
    std::vector<std::vector<std::size_t>> parts(2);
    for (std::size_t p : pts) parts[rng() % 2].push_back(p);
    if (parts[0].empty() || parts[1].empty()) {
        parts[0] = {pts.front()};
        parts[1].assign(pts.begin() + 1, pts.end());
    }
    for (std::size_t a : parts[0])
        for (std::size_t b : parts[1]) d[a][b] = d[b][a] = levels[level];
    split_ultra(rng, d, parts[0], levels, level + 1);
    split_ultra(rng, d, parts[1], levels, level + 1);
}

FiniteMetricSpace random_ultrametric(std::mt19937_64& rng, std::size_t n, std::vector<Rational> levels) {
    while (levels.size() < n) levels.push_back(levels.back() / Rational(2));
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    std::vector<std::size_t> pts(n);
    std::iota(pts.begin(), pts.end(), std::size_t{0});
    split_ultra(rng, d, pts, levels, 0);
    return FiniteMetricSpace::make(point_labels(n), d);
}

FiniteMetricSpace integer_line(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) d[i][j] = Rational(static_cast<long>(i > j ? i - j : j - i));
    }
    return FiniteMetricSpace::make(labels, d);
}

ValueSet eighths() {
    std::vector<Rational> v;
    for (long k = 0; k <= 8; ++k) v.emplace_back(k, 8);
    return ValueSet::make(v);
}

FiniteMetricSpace approximant40() { return urysohn_approximant(eighths(), std::nullopt, 40, 7).space; }

bool trees_equal(const ValuedTree& a, const ValuedTree& b) {
    if (a.nodes.size() != b.nodes.size()) return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        const auto& x = a.nodes[i];
        const auto& y = b.nodes[i];
        if (x.value != y.value || x.parent != y.parent || x.children != y.children || x.point != y.point) return false;
    }
    return true;
}

// Least over all simple i-j paths of the largest edge, by pruned DFS.
Rational minimax_path(const FiniteMetricSpace& m, std::size_t i, std::size_t j) {
    const std::size_t n = m.size();
    Rational best = m.d(i, j);
    std::vector<bool> seen(n, false);
    seen[i] = true;
    auto walk = [&](auto&& self, std::size_t at, const Rational& peak) -> void {
        if (!(peak < best)) return;
        if (at == j) {
            best = peak;
            return;
        }
        for (std::size_t next = 0; next < n; ++next) {
            if (seen[next] || next == at) continue;
            seen[next] = true;
            self(self, next, max(peak, m.d(at, next)));
            seen[next] = false;
        }
    };
    for (std::size_t next = 0; next < n; ++next) {
        if (next == i) continue;
        seen[next] = true;
        walk(walk, next, m.d(i, next));
        seen[next] = false;
    }
    return best;
}

// Homogeneity by definition: every distance-preserving injection from every
// subset extends to a global isometry, checked by counting. The injections
// from a subset always include the automorphism restrictions; equality of
// the counts for every subset is exactly extendability.
bool brute_homogeneous(const FiniteMetricSpace& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> autos;
    do {
        bool iso = true;
        for (std::size_t i = 0; i < n && iso; ++i)
            for (std::size_t j = i + 1; j < n && iso; ++j)
                if (m.d(perm[i], perm[j]) != m.d(i, j)) iso = false;
        if (iso) autos.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) pts.push_back(i);

        std::size_t injections = 0;
        std::vector<std::size_t> image(pts.size());
        std::vector<bool> used(n, false);
        auto place = [&](auto&& self, std::size_t k) -> void {
            if (k == pts.size()) {
                ++injections;
                return;
            }
            for (std::size_t cand = 0; cand < n; ++cand) {
                if (used[cand]) continue;
                bool fits = true;
                for (std::size_t prev = 0; prev < k && fits; ++prev)
                    if (m.d(image[prev], cand) != m.d(pts[prev], pts[k])) fits = false;
                if (!fits) continue;
                used[cand] = true;
                image[k] = cand;
                self(self, k + 1);
                used[cand] = false;
            }
        };
        place(place, 0);

        std::set<std::vector<std::size_t>> restrictions;
        for (const auto& a : autos) {
            std::vector<std::size_t> r;
            for (std::size_t p : pts) r.push_back(a[p]);
            restrictions.insert(std::move(r));
        }
        if (injections != restrictions.size()) return false;
    }
    return true;
}

std::string str(std::size_t n) { return std::to_string(n); }

// ---------------------------------------------------------------- criteria

Outcome criterion1() {
    const auto bad = four_values_check(ValueSet::make({Rational(0), Rational(1), Rational(3), Rational(4), Rational(5)}));
    const Quad want{Rational(1), Rational(5), Rational(1), Rational(3)};
    if (!bad.counterexample || *bad.counterexample != want)
        return {false, "expected counterexample (1,5,1,3) on {0,1,3,4,5}"};
    const auto good = four_values_check(ValueSet::make({Rational(0), Rational(1), Rational(3), Rational(5)}));
    if (!good.ok()) return {false, "{0,1,3,5} flagged although it satisfies the condition"};
    return {true, "counterexample (1,5,1,3) found; {0,1,3,5} clean"};
}

Outcome criterion2() {
    std::size_t glue_calls = 0;
    for (std::size_t mask = 0; mask < 64; ++mask) {
        std::vector<Rational> vals{Rational(0)};
        for (long v = 1; v <= 6; ++v)
            if (mask & (std::size_t{1} << (v - 1))) vals.emplace_back(v);
        const ValueSet V = ValueSet::make(vals);
        const bool four_ok = four_values_check(V).ok();
        const bool dv_ok = dv_distance(V).ok();

        bool glue_ok = true;
        const std::vector<Rational> pos = V.positives();
        for (const Rational& v : pos) {
            for (const Rational& p1 : pos) {
                for (const Rational& q1 : pos) {
                    if ((p1 - q1).abs() > v || v > p1 + q1) continue;  // left triangle must exist
                    const FiniteMetricSpace m1 = FiniteMetricSpace::make(
                        {"x1", "s1", "s2"},
                        {{Rational(0), p1, q1}, {p1, Rational(0), v}, {q1, v, Rational(0)}});
                    for (const Rational& p2 : pos) {
                        for (const Rational& q2 : pos) {
                            if ((p2 - q2).abs() > v || v > p2 + q2) continue;
                            const FiniteMetricSpace m2 = FiniteMetricSpace::make(
                                {"x2", "s1", "s2"},
                                {{Rational(0), p2, q2}, {p2, Rational(0), v}, {q2, v, Rational(0)}});
                            ++glue_calls;
                            try {
                                one_point_amalgam(m1, m2, V);
                            } catch (const AmalgamError& e) {
                                if (e.kind != AmalgamError::Kind::NoAmalgam) throw;
                                glue_ok = false;
                            }
                        }
                    }
                }
            }
        }
        if (four_ok != glue_ok || four_ok != dv_ok) {
            std::ostringstream what;
            what << "equivalence breaks on V mask " << mask << ": four-values " << four_ok << ", amalgam " << glue_ok
                 << ", induced distance " << dv_ok;
            return {false, what.str()};
        }
    }
    return {true, "64 value sets agree across all three characterizations (" + str(glue_calls) + " glue checks)"};
}

Outcome criterion3() {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 2 + static_cast<std::size_t>(round) % 11;
        const FiniteMetricSpace m = random_ultrametric(rng, n, {Rational(3), Rational(2), Rational(1)});
        const NerveResult first = nerve(m);
        const FiniteMetricSpace back = tree_to_space(first.tree);
        if (back.labels() != m.labels() || back.matrix() != m.matrix())
            return {false, "round " + str(round) + ": leaf space of the nerve differs from the input"};
        if (!trees_equal(nerve(back).tree, first.tree))
            return {false, "round " + str(round) + ": nerve of the rebuilt space is a different tree"};
    }
    return {true, "200 spaces of 2..12 points roundtrip exactly"};
}

Outcome criterion4() {
    std::mt19937_64 rng(44);
    const std::vector<Rational> pool{Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 2 + static_cast<std::size_t>(round) % 7;
        const FiniteMetricSpace m = random_metric(rng, n, pool);
        const FiniteMetricSpace u = subdominant_ultrametric(m);
        if (!is_ultrametric(u)) return {false, "round " + str(round) + ": result is not ultrametric"};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (u.d(i, j) > m.d(i, j)) return {false, "round " + str(round) + ": result exceeds the metric"};
                if (u.d(i, j) != minimax_path(m, i, j))
                    return {false, "round " + str(round) + ": disagrees with the simple-path minimax"};
            }
        if (round % 4 == 0) {
            const FiniteMetricSpace um = random_ultrametric(rng, n, {Rational(2), Rational(1)});
            if (subdominant_ultrametric(um).matrix() != um.matrix())
                return {false, "round " + str(round) + ": an ultrametric input moved"};
        }
    }
    return {true, "200 spaces of 2..8 points match the path oracle; ultrametric inputs are fixed"};
}

Outcome criterion5() {
    std::size_t catalog = 0, homogeneous = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::size_t pairs = n * (n - 1) / 2;
        for (std::size_t mask = 0; mask < (std::size_t{1} << pairs); ++mask) {
            std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
            std::size_t bit = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j, ++bit)
                    d[i][j] = d[j][i] = Rational(mask & (std::size_t{1} << bit) ? 2 : 1);
            const FiniteMetricSpace m = FiniteMetricSpace::make(point_labels(n), d);
            if (!is_ultrametric(m)) continue;
            ++catalog;
            const bool tree_says = homogeneity_check(nerve(m).tree).homogeneous;
            const bool brute_says = brute_homogeneous(m);
            if (tree_says != brute_says) {
                std::ostringstream what;
                what << "disagreement at n=" << n << " mask=" << mask << ": tree " << tree_says << ", brute "
                     << brute_says;
                return {false, what.str()};
            }
            if (tree_says) ++homogeneous;
        }
    }
    if (catalog != 277) return {false, "catalog has " + str(catalog) + " spaces, expected 277"};
    return {true, "all 277 catalog spaces agree (" + str(homogeneous) + " homogeneous)"};
}

Outcome criterion6() {
    const ValueSet V = eighths();
    const FiniteMetricSpace m = approximant40();
    // Re-validate from scratch: metric axioms and spectrum containment.
    try {
        FiniteMetricSpace::make(m.labels(), m.matrix(), V);
    } catch (const SpaceError& e) {
        return {false, std::string("approximant fails validation: ") + e.what()};
    }

    const std::vector<Rational> pos = V.positives();
    std::size_t checked = 0, unrealized = 0;
    const std::size_t prefix = std::min<std::size_t>(8, m.size());
    auto audit = [&](const DSocket& socket) {
        if (!validate_dsocket(m, socket)) return;
        ++checked;
        if (orbit(m, socket).empty()) ++unrealized;
    };
    for (std::size_t b = 0; b < prefix; ++b)
        for (const Rational& dist : pos) audit(DSocket{{{b, dist}}});
    for (std::size_t b1 = 0; b1 < prefix; ++b1)
        for (std::size_t b2 = b1 + 1; b2 < prefix; ++b2)
            for (const Rational& d1 : pos)
                for (const Rational& d2 : pos) audit(DSocket{{{b1, d1}, {b2, d2}}});

    std::ostringstream note;
    note << "spectrum and axioms hold; " << (checked - unrealized) << "/" << checked
         << " valid sockets over the first " << prefix << " points realized";
    if (unrealized > 0) {
        note << " (" << unrealized << " unrealized: 40 points cannot host every socket)";
        return {false, note.str()};
    }
    return {true, note.str()};
}

Outcome criterion7() {
    const FiniteMetricSpace m = approximant40();
    const Rational half(1, 2), two_thirds(2, 3), three_quarters(3, 4), one(1);
    auto in = [&](const Rational& d, const Rational& lo, const Rational& hi) { return lo <= d && d < hi; };

    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < m.size(); ++x) {
        const Rational d0 = m.d(0, x);
        if (in(d0, half, two_thirds) || in(d0, three_quarters, one)) continue;  // the guard rings
        keep.push_back(x);
    }
    const Partition chains = eps_components(m.restrict(keep), Rational(1, 13));
    for (const auto& block : chains.blocks) {
        bool inner = false, outer = false;
        for (std::size_t i : block) {
            const Rational d0 = m.d(0, keep[i]);
            (in(d0, two_thirds, three_quarters) ? inner : outer) = true;
        }
        if (inner && outer) return {false, "an eps-chain crosses the protected ring"};
    }
    std::ostringstream note;
    note << chains.blocks.size() << " chains over " << keep.size()
         << " guard-avoiding points; none crosses the ring boundary";
    return {true, note.str()};
}

Outcome criterion8() {
    const FiniteMetricSpace F =
        FiniteMetricSpace::make({"a", "b"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
    const FiniteMetricSpace G = sup_power(F, 2);
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> coloring(4);
        for (int i = 0; i < 4; ++i) coloring[i] = (mask >> i) & 1;
        if (monochromatic_part(F, G, coloring).empty())
            return {false, "coloring mask " + str(static_cast<std::size_t>(mask)) + " has no monochromatic copy"};
    }
    const auto lines = combinatorial_lines(F, 2);
    for (const auto& line : lines) {
        std::vector<std::size_t> ranks;
        for (const auto& tuple : line.points) ranks.push_back(tuple[0] * 2 + tuple[1]);
        if (G.restrict(ranks).matrix() != F.matrix()) return {false, "a combinatorial line is not a copy of F"};
    }
    return {true, "16/16 colorings have monochromatic copies; all " + str(lines.size()) + " lines are copies of F"};
}

Outcome criterion9() {
    OmegaSpec spec;
    spec.weights = {Rational(2), Rational(1)};
    spec.degrees = {std::size_t{2}, std::size_t{2}};
    const FiniteMetricSpace m = omega_sequence_space(spec);
    const UltraSpecPartition sp = ultra_spec_partition(m, 0, {Rational(0), Rational(1), Rational(2)});

    if (embeds(m, m.restrict(sp.even)) || embeds(m, m.restrict(sp.odd)))
        return {false, "a color class contains a copy of the whole space"};

    std::vector<int> coloring(m.size(), 1);
    for (std::size_t p : sp.even) coloring[p] = 0;
    const GreedyMonoResult g = greedy_monochromatic_embedding(m, coloring);
    if (g.ok()) return {false, "greedy found a monochromatic copy although none exists"};
    if (!g.stuck_ball) return {false, "greedy reported no witness ball"};
    return {true, "both color classes reject the space; greedy reports a stuck ball of " +
                      str(g.stuck_ball->size()) + " points"};
}

Outcome criterion10() {
    const FiniteMetricSpace line = integer_line(101);
    const UnboundedPartition up = unbounded_partition(line, 0);
    const std::vector<Rational> want{Rational(0), Rational(2), Rational(8), Rational(26), Rational(80)};
    if (up.r_seq != want) return {false, "r-sequence deviates from (0,2,8,26,80)"};

    std::vector<bool> in_even(101, false);
    for (std::size_t p : up.even) in_even[p] = true;
    auto meets_both = [&](std::size_t lo, std::size_t hi) {  // image interval [lo, hi]
        bool e = false, o = false;
        for (std::size_t x = lo; x <= hi; ++x) (in_even[x] ? e : o) = true;
        return e && o;
    };

    // The two total self-isometries, straight from the embedder.
    const auto self = isometric_embeddings(line, line);
    if (self.size() != 2) return {false, "expected exactly identity and reflection as total self-isometries"};
    for (const auto& emb : self) {
        bool e = false, o = false;
        for (std::size_t img : emb.image) (in_even[img] ? e : o) = true;
        if (!(e && o)) return {false, "a total self-isometry is monochromatic"};
    }

    // The 201 translations x -> x+t of maximal induced subsets. Each must be
    // rediscovered by the embedder, and each image should meet E and O.
    std::size_t mono = 0;
    long first_bad = 201;
    for (long t = -100; t <= 100; ++t) {
        const std::size_t lo = static_cast<std::size_t>(std::max(0L, -t));
        const std::size_t hi = static_cast<std::size_t>(std::min(100L, 100L - t));
        std::vector<std::size_t> domain;
        for (std::size_t x = lo; x <= hi; ++x) domain.push_back(x);
        std::vector<std::size_t> image;
        for (std::size_t x = lo; x <= hi; ++x) image.push_back(static_cast<std::size_t>(static_cast<long>(x) + t));

        bool found = false;
        for (const auto& emb : isometric_embeddings(line.restrict(domain), line))
            if (emb.image == image) {
                found = true;
                break;
            }
        if (!found) return {false, "the embedder misses the translation by " + std::to_string(t)};
        if (!meets_both(image.front(), image.back())) {
            ++mono;
            first_bad = std::min(first_bad, std::abs(t));
        }
    }
    if (mono > 0) {
        std::ostringstream what;
        what << "r-sequence exact, but only " << (201 - mono) << "/201 translations meet both parts: " << mono
             << " with shift magnitude >= " << first_bad << " land in one part";
        return {false, what.str()};
    }
    return {true, "r-sequence exact; all 201 translations and the reflection meet both parts"};
}

Outcome criterion11() {
    const FiniteMetricSpace m = approximant40();
    const Rational radius(1, 3), gap(2, 3);
    std::size_t c1 = SIZE_MAX, c2 = SIZE_MAX;
    for (std::size_t i = 0; i < m.size() && c1 == SIZE_MAX; ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m.d(i, j) >= gap) {
                c1 = i;
                c2 = j;
                break;
            }
    if (c1 == SIZE_MAX) return {false, "no pair at distance >= 2/3 in the approximant"};

    const HolesReport report = holes_check(m, {c1, c2}, {radius, radius}, 2);
    std::ostringstream note;
    note << "centers (" << m.label(c1) << "," << m.label(c2) << "), " << report.removed.size() << " points removed; "
         << report.realized << "/" << report.sockets_checked << " sockets realized in the complement, "
         << report.rim_pending << " rim-pending, " << report.empty_orbit << " with empty orbit, "
         << report.violations.size() << " rim violations";
    const bool pass = report.realized == report.sockets_checked;
    return {pass, note.str()};
}

// ---------------------------------------------------------------- driver

struct Criterion {
    int number;
    Outcome (*run)();
    double budget_seconds;
};

const Criterion kCriteria[] = {
    {1, criterion1, 1.0},  {2, criterion2, 30.0}, {3, criterion3, 10.0}, {4, criterion4, 20.0},
    {5, criterion5, 60.0}, {6, criterion6, 60.0}, {7, criterion7, 10.0}, {8, criterion8, 1.0},
    {9, criterion9, 1.0},  {10, criterion10, 30.0}, {11, criterion11, 60.0},
};

bool run_one(const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, "unhandled exception"};
    try {
        outcome = c.run();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && elapsed > c.budget_seconds) {
        std::ostringstream what;
        what << "checks pass but took " << elapsed << " s (budget " << c.budget_seconds << " s)";
        outcome = {false, what.str()};
    }
    std::printf("criterion %2d: %s (%.2fs) — %s\n", c.number, outcome.pass ? "PASS" : "FAIL", elapsed,
                outcome.note.c_str());
    std::fflush(stdout);
    return outcome.pass;
}

}  // namespace

int main(int argc, char** argv) {
    bool all_pass = true;
    if (argc > 1) {
        const int wanted = std::atoi(argv[1]);
        for (const Criterion& c : kCriteria)
            if (c.number == wanted) return run_one(c) ? 0 : 1;
        std::fprintf(stderr, "no criterion %s\n", argv[1]);
        return 2;
    }
    for (const Criterion& c : kCriteria) all_pass = run_one(c) && all_pass;
    return all_pass ? 0 : 1;
}
