#include "vmet/embed.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace vmet {

namespace {

// Pattern point order: most distance-diverse first, ties by index. A point
// with many distinct distances prunes earlier.
std::vector<std::size_t> assignment_order(const FiniteMetricSpace& pattern) {
    const std::size_t n = pattern.size();
    std::vector<std::size_t> diversity(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<Rational> seen;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) seen.insert(pattern.d(i, j));
        diversity[i] = seen.size();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return diversity[a] > diversity[b]; });
    return order;
}

struct Search {
    const FiniteMetricSpace& pattern;
    const FiniteMetricSpace& target;
    const std::vector<std::size_t>& order;
    std::size_t limit;  // 0 = unbounded
    std::vector<Embedding>& out;
    std::vector<std::size_t> img;   // img[pattern point] = target point
    std::vector<char> used;         // target point taken

    bool full() const { return limit != 0 && out.size() >= limit; }

    bool consistent(std::size_t depth, std::size_t p, std::size_t t) const {
        for (std::size_t k = 0; k < depth; ++k) {
            const std::size_t q = order[k];
            if (pattern.d(p, q) != target.d(t, img[q])) return false;
        }
        return true;
    }

    void run(std::size_t depth) {
        if (full()) return;
        if (depth == order.size()) {
            out.push_back(Embedding{img});
            return;
        }
        const std::size_t p = order[depth];
        for (std::size_t t = 0; t < target.size(); ++t) {
            if (used[t] || !consistent(depth, p, t)) continue;
            img[p] = t;
            used[t] = 1;
            run(depth + 1);
            used[t] = 0;
            if (full()) return;
        }
    }
};

}  // namespace

std::vector<Embedding> isometric_embeddings(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target,
                                            std::size_t limit) {
    std::vector<Embedding> out;
    if (pattern.size() > target.size()) return out;
    const auto order = assignment_order(pattern);
    Search s{pattern, target, order, limit, out, std::vector<std::size_t>(pattern.size(), 0),
             std::vector<char>(target.size(), 0)};
    if (pattern.size() == 0) {
        out.push_back(Embedding{});
        return out;
    }
    s.run(0);
    return out;
}

std::vector<Embedding> isometric_embeddings_parallel(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target,
                                                     std::size_t limit) {
    if (pattern.size() == 0 || pattern.size() > target.size())
        return isometric_embeddings(pattern, target, limit);
    const auto order = assignment_order(pattern);
    const std::size_t first = order[0];
    std::vector<std::vector<Embedding>> per_branch(target.size());

#ifdef VMET_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long t = 0; t < static_cast<long>(target.size()); ++t) {
        std::vector<Embedding> local;
        Search s{pattern, target,
                 order,   0,  // no limit inside a branch: merge order must match the serial scan
                 local,   std::vector<std::size_t>(pattern.size(), 0),
                 std::vector<char>(target.size(), 0)};
        s.img[first] = static_cast<std::size_t>(t);
        s.used[static_cast<std::size_t>(t)] = 1;
        s.run(1);
        per_branch[static_cast<std::size_t>(t)] = std::move(local);
    }

    std::vector<Embedding> out;
    for (auto& branch : per_branch) {
        for (auto& e : branch) {
            out.push_back(std::move(e));
            if (limit != 0 && out.size() >= limit) return out;
        }
    }
    return out;
}

bool embeds(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target) {
    return !isometric_embeddings(pattern, target, 1).empty();
}

std::vector<int> monochromatic_part(const FiniteMetricSpace& pattern, const FiniteMetricSpace& target,
                                    const std::vector<int>& coloring) {
    if (coloring.size() != target.size())
        throw SpaceError(SpaceError::Kind::ShapeMismatch, "monochromatic_part: coloring size mismatch");
    for (int c : coloring)
        if (c != 0 && c != 1)
            throw SpaceError(SpaceError::Kind::ShapeMismatch, "monochromatic_part: colors must be 0 or 1");
    std::vector<int> result;
    for (int c : {0, 1}) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < target.size(); ++i)
            if (coloring[i] == c) pts.push_back(i);
        if (embeds(pattern, target.restrict(pts))) result.push_back(c);
    }
    return result;
}

}  // namespace vmet
