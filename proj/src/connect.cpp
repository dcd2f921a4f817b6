#include "vmet/connect.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace vmet {

bool is_partition_of(const Partition& partition, std::size_t size) {
    std::vector<char> seen(size, 0);
    std::size_t total = 0;
    for (const auto& block : partition.blocks) {
        if (!std::is_sorted(block.begin(), block.end())) return false;
        for (std::size_t p : block) {
            if (p >= size || seen[p]) return false;
            seen[p] = 1;
            ++total;
        }
    }
    return total == size;
}

Partition UnionFind::to_partition() {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < parent_.size(); ++i) by_root[find(i)].push_back(i);
    Partition out;
    for (auto& [root, members] : by_root) out.blocks.push_back(std::move(members));
    return out;
}

Partition eps_components(const FiniteMetricSpace& space, const Rational& eps) {
    const std::size_t n = space.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (space.d(i, j) <= eps) uf.unite(i, j);
    return uf.to_partition();
}

Rational lambda_eps(const FiniteMetricSpace& space, std::size_t a, const Rational& eps) {
    if (a >= space.size()) throw SpaceError(SpaceError::Kind::UnknownPoint, "lambda: point index out of range", a);
    const Partition parts = eps_components(space, eps);
    Rational diam(0);
    for (const auto& block : parts.blocks) {
        if (!std::binary_search(block.begin(), block.end(), a)) continue;
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = i + 1; j < block.size(); ++j) diam = max(diam, space.d(block[i], block[j]));
        break;
    }
    return min(Rational(1), diam);
}

LambdaProfile lambda(const FiniteMetricSpace& space, std::size_t a) {
    if (a >= space.size()) throw SpaceError(SpaceError::Kind::UnknownPoint, "lambda: point index out of range", a);
    LambdaProfile profile;
    profile.value = Rational(0);
    std::vector<Rational> spectrum = space.spectrum();
    std::vector<Rational> scales;
    for (const Rational& s : spectrum)
        if (s.is_positive()) scales.push_back(s);
    if (scales.empty()) return profile;  // single point, nothing within reach
    scales.push_back(scales.front() / Rational(2));  // isolates a
    std::sort(scales.begin(), scales.end(), [](const Rational& x, const Rational& y) { return y < x; });
    bool first = true;
    for (const Rational& eps : scales) {
        const Rational v = lambda_eps(space, a, eps);
        profile.rows.push_back({eps, v});
        profile.value = first ? v : min(profile.value, v);
        first = false;
    }
    return profile;
}

FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& space) {
    const std::size_t n = space.size();
    // Pairs ascending by weight, ties in label-lexicographic order; the merge
    // thresholds are the same for every tie order.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
        const Rational &dp = space.d(p.first, p.second), &dq = space.d(q.first, q.second);
        if (dp != dq) return dp < dq;
        return std::tie(space.labels()[p.first], space.labels()[p.second]) <
               std::tie(space.labels()[q.first], space.labels()[q.second]);
    });

    UnionFind uf(n);
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& [i, j] : pairs) {
        const std::size_t ri = uf.find(i), rj = uf.find(j);
        if (ri == rj) continue;
        for (std::size_t x : members[ri])
            for (std::size_t y : members[rj]) out[x][y] = out[y][x] = space.d(i, j);
        uf.unite(ri, rj);
        const std::size_t keep = uf.find(ri), drop = keep == ri ? rj : ri;
        members[keep].insert(members[keep].end(), members[drop].begin(), members[drop].end());
        members[drop].clear();
    }
    return FiniteMetricSpace::make(space.labels(), out, space.value_set());
}

CantorReport cantor_report(const FiniteMetricSpace& space) {
    CantorReport report;
    report.cantor_connected = space.size() <= 1;
    for (const Rational& eps : space.spectrum()) {
        if (!eps.is_positive()) continue;
        const std::size_t comps = eps_components(space, eps).blocks.size();
        report.levels.push_back({eps, comps, comps == 1});
    }
    return report;
}

}  // namespace vmet
