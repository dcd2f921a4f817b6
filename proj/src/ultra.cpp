#include "vmet/ultra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vmet {

namespace {

using Kind = UltraError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& what) { throw UltraError(kind, what); }

}  // namespace

std::optional<std::array<std::size_t, 3>> ultrametric_violation(const FiniteMetricSpace& space) {
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (space.d(i, j) > max(space.d(i, k), space.d(k, j)))
                    return std::array<std::size_t, 3>{i, j, k};
            }
    return std::nullopt;
}

bool is_ultrametric(const FiniteMetricSpace& space) { return !ultrametric_violation(space).has_value(); }

std::vector<std::size_t> ValuedTree::leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].leaf()) out.push_back(i);
    return out;
}

std::vector<Rational> ValuedTree::path_value_set(std::size_t node) const {
    std::vector<Rational> vals;
    for (std::size_t cur = node;; cur = nodes[cur].parent) {
        vals.push_back(nodes[cur].value);
        if (nodes[cur].parent == SIZE_MAX) break;
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

void validate_tree(const ValuedTree& tree) {
    const auto& nodes = tree.nodes;
    if (nodes.empty()) fail(Kind::InvalidTree, "tree has no nodes");
    if (nodes[0].parent != SIZE_MAX) fail(Kind::InvalidTree, "node 0 must be the root");
    std::set<std::string> names;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        if (i > 0) {
            if (nd.parent == SIZE_MAX) fail(Kind::InvalidTree, "more than one root");
            if (nd.parent >= i) fail(Kind::InvalidTree, "parent must precede child");
            if (!(nd.value < nodes[nd.parent].value))
                fail(Kind::InvalidTree, "values must strictly decrease towards the leaves");
            const auto& sibs = nodes[nd.parent].children;
            if (std::find(sibs.begin(), sibs.end(), i) == sibs.end())
                fail(Kind::InvalidTree, "child missing from parent's child list");
        }
        for (std::size_t c : nd.children) {
            if (c >= nodes.size() || nodes[c].parent != i)
                fail(Kind::InvalidTree, "child list disagrees with parent pointers");
        }
        if (nd.leaf()) {
            if (!nd.children.empty()) fail(Kind::InvalidTree, "leaf has children");
            if (!nd.value.is_zero()) fail(Kind::InvalidTree, "leaf value must be 0");
            if (!names.insert(*nd.point).second) fail(Kind::InvalidTree, "duplicate point name");
        } else if (nd.children.empty()) {
            fail(Kind::InvalidTree, "childless node without a point name");
        }
    }
}

NerveResult nerve(const FiniteMetricSpace& space) {
    if (!is_ultrametric(space)) fail(Kind::NotUltrametric, "nerve requires an ultrametric space");
    const std::size_t n = space.size();

    std::set<std::vector<std::size_t>> seen;
    for (std::size_t a = 0; a < n; ++a)
        for (const Rational& s : space.spectrum_at(a)) {
            std::vector<std::size_t> ball;
            for (std::size_t z = 0; z < n; ++z)
                if (space.d(a, z) <= s) ball.push_back(z);
            seen.insert(std::move(ball));
        }
    // Bigger balls first so parents precede children; lexicographic content
    // order breaks size ties deterministically.
    std::vector<std::vector<std::size_t>> balls(seen.begin(), seen.end());
    std::sort(balls.begin(), balls.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });

    NerveResult result;
    result.balls = balls;
    auto& nodes = result.tree.nodes;
    nodes.resize(balls.size());
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const auto& ball = balls[i];
        Rational diam(0);
        for (std::size_t a = 0; a < ball.size(); ++a)
            for (std::size_t b = a + 1; b < ball.size(); ++b)
                diam = max(diam, space.d(ball[a], ball[b]));
        nodes[i].value = diam;
        if (ball.size() == 1) nodes[i].point = space.labels()[ball[0]];
        // Balls nest laminarly, so the supersets of ball i form a chain and
        // the smallest one (latest in the sort) is the parent.
        for (std::size_t j = i; j-- > 0;) {
            if (balls[j].size() <= ball.size()) continue;
            if (std::includes(balls[j].begin(), balls[j].end(), ball.begin(), ball.end())) {
                nodes[i].parent = j;
                break;
            }
        }
        if (i > 0 && nodes[i].parent == SIZE_MAX)
            fail(Kind::NotUltrametric, "ball family is not nested");
        if (nodes[i].parent != SIZE_MAX) nodes[nodes[i].parent].children.push_back(i);
    }
    return result;
}

FiniteMetricSpace tree_to_space(const ValuedTree& tree) {
    validate_tree(tree);
    const auto leaves = tree.leaves();
    const std::size_t n = leaves.size();

    // Depth of every node for the common-ancestor walk.
    std::vector<std::size_t> depth(tree.nodes.size(), 0);
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) depth[i] = depth[tree.nodes[i].parent] + 1;
    auto lca = [&](std::size_t a, std::size_t b) {
        while (a != b) {
            if (depth[a] < depth[b])
                b = tree.nodes[b].parent;
            else
                a = tree.nodes[a].parent;
        }
        return a;
    };

    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t leaf : leaves) labels.push_back(*tree.nodes[leaf].point);
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = tree.nodes[lca(leaves[i], leaves[j])].value;
    return FiniteMetricSpace::make(labels, dist);
}

std::size_t degree(const ValuedTree& tree, std::size_t node) {
    if (node >= tree.nodes.size()) fail(Kind::UnknownNode, "tree node index out of range");
    return tree.nodes[node].children.size();
}

HomogeneityResult homogeneity_check(const ValuedTree& tree) {
    HomogeneityResult res;
    const auto& nodes = tree.nodes;
    // Equal value forces equal degree; first offending pair in node order.
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (nodes[a].value == nodes[b].value && nodes[a].children.size() != nodes[b].children.size()) {
                res.homogeneous = false;
                res.kind = HomogeneityResult::ViolationKind::DegreeMismatch;
                res.node_a = a;
                res.node_b = b;
                return res;
            }
    const auto leaves = tree.leaves();
    for (std::size_t a = 0; a < leaves.size(); ++a)
        for (std::size_t b = a + 1; b < leaves.size(); ++b)
            if (tree.path_value_set(leaves[a]) != tree.path_value_set(leaves[b])) {
                res.homogeneous = false;
                res.kind = HomogeneityResult::ViolationKind::LeafPathMismatch;
                res.node_a = leaves[a];
                res.node_b = leaves[b];
                return res;
            }
    return res;
}

FiniteMetricSpace omega_sequence_space(const OmegaSpec& spec, std::size_t size_limit) {
    if (spec.weights.size() != spec.degrees.size())
        fail(Kind::BadSpec, "weights and degrees must have equal length");
    for (std::size_t i = 0; i < spec.weights.size(); ++i) {
        if (!spec.weights[i].is_positive()) fail(Kind::BadSpec, "weights must be positive");
        if (i > 0 && !(spec.weights[i] < spec.weights[i - 1]))
            fail(Kind::BadSpec, "weights must strictly decrease");
    }
    if (spec.unbounded_cap < 2) fail(Kind::BadSpec, "unbounded cap must be at least 2");
    std::vector<std::size_t> deg;
    std::size_t total = 1;
    for (const auto& d : spec.degrees) {
        const std::size_t k = d.value_or(spec.unbounded_cap);
        if (k < 2) fail(Kind::BadSpec, "degrees must be at least 2");
        if (total > size_limit / k) fail(Kind::SizeLimitExceeded, "tuple space exceeds the size limit");
        total *= k;
        deg.push_back(k);
    }

    // Tuples in lexicographic order, first coordinate most significant; an
    // empty spec yields the single empty tuple.
    const std::size_t levels = deg.size();
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> cur(levels, 0);
    for (bool more = true; more;) {
        tuples.push_back(cur);
        more = false;
        for (std::size_t pos = levels; pos > 0;) {
            --pos;
            if (++cur[pos] < deg[pos]) {
                more = true;
                break;
            }
            cur[pos] = 0;
        }
    }
    std::vector<std::string> labels;
    labels.reserve(total);
    for (const auto& t : tuples) {
        std::string s = "(";
        for (std::size_t i = 0; i < levels; ++i) {
            if (i) s += ',';
            s += std::to_string(t[i]);
        }
        s += ')';
        labels.push_back(std::move(s));
    }
    std::vector<std::vector<Rational>> dist(total, std::vector<Rational>(total, Rational(0)));
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = i + 1; j < total; ++j) {
            std::size_t mu = 0;
            while (tuples[i][mu] == tuples[j][mu]) ++mu;
            dist[i][j] = dist[j][i] = spec.weights[mu];
        }
    return FiniteMetricSpace::make(labels, dist);
}

IndivisibilityReport indivisibility_report(const FiniteMetricSpace& space, std::size_t cap) {
    const NerveResult nv = nerve(space);
    IndivisibilityReport rep;
    rep.homogeneity = homogeneity_check(nv.tree);
    rep.spectrum = space.spectrum();
    rep.diameter = space.diameter();
    for (std::size_t i = 0; i < nv.tree.nodes.size(); ++i) {
        const auto& nd = nv.tree.nodes[i];
        if (nd.leaf()) continue;
        IndivisibilityReport::NodeInfo info;
        info.node = i;
        info.value = nd.value;
        info.degree = nd.children.size();
        info.status = info.degree < cap ? "below-cap" : info.degree == cap ? "at-cap" : "above-cap";
        rep.internal_nodes.push_back(std::move(info));
    }
    return rep;
}

namespace {

// First isometric embedding of the ball at `pattern` into the ball at
// `target`, both given as point-index sets of `space`; identity is preferred
// when it qualifies. Returned images are global point indices.
std::optional<std::vector<std::size_t>> first_ball_embedding(const FiniteMetricSpace& space,
                                                             const std::vector<std::size_t>& pattern,
                                                             const std::vector<std::size_t>& target) {
    if (std::includes(target.begin(), target.end(), pattern.begin(), pattern.end()))
        return pattern;  // identity
    if (pattern.size() > target.size()) return std::nullopt;
    const auto found =
        isometric_embeddings(space.restrict(pattern), space.restrict(target), 1);
    if (found.empty()) return std::nullopt;
    std::vector<std::size_t> image;
    image.reserve(pattern.size());
    for (std::size_t t : found[0].image) image.push_back(target[t]);
    return image;
}

}  // namespace

GreedyMonoResult greedy_monochromatic_embedding(const FiniteMetricSpace& space, const std::vector<int>& coloring) {
    const std::size_t n = space.size();
    if (coloring.size() != n) fail(Kind::BadSpec, "coloring size must match the space");
    for (int c : coloring)
        if (c != 0 && c != 1) fail(Kind::BadSpec, "coloring entries must be 0 or 1");
    const NerveResult nv = nerve(space);
    const auto& nodes = nv.tree.nodes;
    const std::size_t m = nodes.size();

    // part0[b]: the ball at node b embeds into its color-0 part. Children
    // first (parents precede children in node order); if every child qualifies
    // their embeddings already combine, otherwise search from scratch.
    std::vector<char> part0(m, 0);
    for (std::size_t b = m; b-- > 0;) {
        const auto& ball = nv.balls[b];
        std::vector<std::size_t> zero_part;
        for (std::size_t p : ball)
            if (coloring[p] == 0) zero_part.push_back(p);
        if (zero_part.size() == ball.size()) {
            part0[b] = 1;
            continue;
        }
        if (zero_part.size() < ball.size() && !nodes[b].children.empty()) {
            bool all = true;
            for (std::size_t c : nodes[b].children) all = all && part0[c];
            if (all) {
                part0[b] = 1;
                continue;
            }
        }
        if (zero_part.size() < ball.size() && zero_part.empty()) continue;
        part0[b] = embeds(space.restrict(ball), space.restrict(zero_part)) ? 1 : 0;
    }

    std::vector<char> in_m0(n, 0);  // union of the part0 balls
    for (std::size_t b = 0; b < m; ++b)
        if (part0[b])
            for (std::size_t p : nv.balls[b]) in_m0[p] = 1;

    GreedyMonoResult result;
    auto finish = [&](std::vector<std::size_t> image, int color) {
        for (std::size_t i = 0; i < n; ++i) {
            if (coloring[image[i]] != color) throw std::logic_error("greedy image left its color class");
            for (std::size_t j = i + 1; j < n; ++j)
                if (space.d(image[i], image[j]) != space.d(i, j))
                    throw std::logic_error("greedy image is not isometric");
        }
        result.embedding = Embedding{std::move(image)};
        result.into_color = color;
    };

    if (part0[0]) {  // the whole space embeds into its color-0 part
        std::vector<std::size_t> zero_part;
        for (std::size_t p = 0; p < n; ++p)
            if (coloring[p] == 0) zero_part.push_back(p);
        auto image = first_ball_embedding(space, nv.balls[0], zero_part);
        if (!image) throw std::logic_error("qualifying ball lost its embedding");
        finish(std::move(*image), 0);
        return result;
    }

    bool outside_is_zero = true;
    for (std::size_t p = 0; p < n && outside_is_zero; ++p)
        if (!in_m0[p] && coloring[p] == 1) outside_is_zero = false;
    if (outside_is_zero) {
        // Identity off the part0 region, ball-local embeddings on its maximal
        // balls; cross-ball distances are constant so the patches agree.
        std::vector<std::size_t> image(n, SIZE_MAX);
        for (std::size_t p = 0; p < n; ++p)
            if (!in_m0[p]) image[p] = p;
        for (std::size_t b = 0; b < m; ++b) {
            if (!part0[b]) continue;
            bool maximal = true;
            for (std::size_t a = nodes[b].parent; a != SIZE_MAX; a = nodes[a].parent)
                if (part0[a]) {
                    maximal = false;
                    break;
                }
            if (!maximal) continue;
            std::vector<std::size_t> zero_part;
            for (std::size_t p : nv.balls[b])
                if (coloring[p] == 0) zero_part.push_back(p);
            auto patch = first_ball_embedding(space, nv.balls[b], zero_part);
            if (!patch) throw std::logic_error("qualifying ball lost its embedding");
            for (std::size_t i = 0; i < nv.balls[b].size(); ++i) image[nv.balls[b][i]] = (*patch)[i];
        }
        finish(std::move(image), 0);
        return result;
    }

    // Greedy copy into color 1 avoiding the part0 region. Each new point goes
    // to a fresh sibling ball of the already-placed nearest neighbours.
    auto node_of_ball = [&](std::size_t center, const Rational& radius) {
        // Smallest ball around `center` containing everything within `radius`.
        std::vector<std::size_t> want;
        for (std::size_t z = 0; z < n; ++z)
            if (space.d(center, z) <= radius) want.push_back(z);
        for (std::size_t b = m; b-- > 0;)
            if (nv.balls[b] == want) return b;
        throw std::logic_error("realized ball missing from the nerve");
    };
    auto fresh_in = [&](std::size_t b) -> std::optional<std::size_t> {
        for (std::size_t p : nv.balls[b])
            if (!in_m0[p] && coloring[p] == 1) return p;
        return std::nullopt;
    };

    std::vector<std::size_t> image(n, SIZE_MAX);
    std::vector<char> used(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        std::optional<std::size_t> pick;
        if (x == 0) {
            for (std::size_t p = 0; p < n && !pick; ++p)
                if (!in_m0[p] && coloring[p] == 1 && !used[p]) pick = p;
            if (!pick) throw std::logic_error("greedy entered with no starting point");
        } else {
            Rational p_min = space.d(0, x);
            for (std::size_t i = 1; i < x; ++i) p_min = min(p_min, space.d(i, x));
            std::vector<std::size_t> nearest;
            for (std::size_t i = 0; i < x; ++i)
                if (space.d(i, x) == p_min) nearest.push_back(i);
            const std::size_t b = node_of_ball(image[nearest[0]], p_min);
            if (nodes[b].value != p_min) {
                // No point realizes the needed distance from the placed copy.
                result.stuck_ball = nv.balls[b];
                return result;
            }
            std::set<std::size_t> blocked;  // children already housing a nearest image
            for (std::size_t i : nearest) {
                for (std::size_t c : nodes[b].children) {
                    const auto& cb = nv.balls[c];
                    if (std::binary_search(cb.begin(), cb.end(), image[i])) blocked.insert(c);
                }
            }
            for (std::size_t c : nodes[b].children) {
                if (part0[c] || blocked.count(c)) continue;
                pick = fresh_in(c);
                if (pick) break;
            }
            if (!pick) {
                result.stuck_ball = nv.balls[b];
                return result;
            }
        }
        image[x] = *pick;
        used[*pick] = 1;
    }
    finish(std::move(image), 1);
    return result;
}

}  // namespace vmet
