#include "doctest.h"

#include "support/generators.hpp"
#include "vmet/embed.hpp"
#include "vmet/space.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace vmet;
using testsupport::pair_space;
using testsupport::space_from_upper;

namespace {

// Definitional oracle: every injective index map, filtered by the full
// distance table. No pruning, no ordering cleverness.
std::set<std::vector<std::size_t>> embeddings_oracle(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    std::set<std::vector<std::size_t>> out;
    std::vector<std::size_t> image(a.size(), 0);
    while (true) {
        bool injective = true;
        for (std::size_t i = 0; i < image.size() && injective; ++i)
            for (std::size_t j = i + 1; j < image.size() && injective; ++j)
                if (image[i] == image[j]) injective = false;
        if (injective) {
            bool iso = true;
            for (std::size_t i = 0; i < image.size() && iso; ++i)
                for (std::size_t j = 0; j < image.size() && iso; ++j)
                    if (a.d(i, j) != b.d(image[i], image[j])) iso = false;
            if (iso) out.insert(image);
        }
        std::size_t k = image.size();
        while (k-- > 0) {
            if (++image[k] < b.size()) break;
            image[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

std::set<std::vector<std::size_t>> as_set(const std::vector<Embedding>& embs) {
    std::set<std::vector<std::size_t>> out;
    for (const auto& e : embs) out.insert(e.image);
    return out;
}

}  // namespace

TEST_CASE("embedding search matches the brute-force oracle") {
    std::mt19937_64 rng(11);
    const std::vector<Rational> pool{Rational(1), Rational(2)};
    for (int round = 0; round < 15; ++round) {
        const FiniteMetricSpace target = testsupport::random_metric(rng, 6, pool);
        for (std::size_t k = 1; k <= 3; ++k) {
            std::vector<std::size_t> pick;
            for (std::size_t i = 0; i < k; ++i) pick.push_back((round + 2 * i) % target.size());
            std::sort(pick.begin(), pick.end());
            pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
            const FiniteMetricSpace pattern = target.restrict(pick);
            CHECK(as_set(isometric_embeddings(pattern, target)) == embeddings_oracle(pattern, target));
        }
    }
}

TEST_CASE("embedding counts on pinned spaces") {
    const FiniteMetricSpace f = pair_space("a", "b", Rational(1));
    const FiniteMetricSpace g = sup_power(f, 2);

    CHECK(isometric_embeddings(f, g).size() == 12);  // all 4*3 ordered pairs sit at distance 1
    CHECK(embeds(f, g));

    const auto self = isometric_embeddings(g, g);
    const std::vector<std::size_t> identity{0, 1, 2, 3};
    CHECK(std::any_of(self.begin(), self.end(), [&](const Embedding& e) { return e.image == identity; }));

    CHECK(isometric_embeddings(pair_space("a", "b", Rational(3)), g).empty());
    CHECK(!embeds(pair_space("a", "b", Rational(3)), g));

    // A pattern larger than the target can never embed.
    CHECK(!embeds(g, f));
}

TEST_CASE("limit returns a prefix of the full enumeration") {
    const FiniteMetricSpace f = pair_space("a", "b", Rational(1));
    const FiniteMetricSpace g = sup_power(f, 2);
    const auto full = isometric_embeddings(f, g);
    const auto capped = isometric_embeddings(f, g, 5);
    REQUIRE(capped.size() == 5);
    for (std::size_t i = 0; i < capped.size(); ++i) CHECK(capped[i].image == full[i].image);
    CHECK(isometric_embeddings(f, g, 100).size() == full.size());
}

TEST_CASE("parallel enumeration reproduces the serial order exactly") {
    std::mt19937_64 rng(23);
    const std::vector<Rational> pool{Rational(1), Rational(2), Rational(3)};
    for (int round = 0; round < 10; ++round) {
        const FiniteMetricSpace target = testsupport::random_metric(rng, 7, pool);
        const FiniteMetricSpace pattern = target.restrict({0, 2, 4});
        const auto serial = isometric_embeddings(pattern, target);
        const auto parallel = isometric_embeddings_parallel(pattern, target);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].image == parallel[i].image);

        const auto serial_cap = isometric_embeddings(pattern, target, 3);
        const auto parallel_cap = isometric_embeddings_parallel(pattern, target, 3);
        REQUIRE(serial_cap.size() == parallel_cap.size());
        for (std::size_t i = 0; i < serial_cap.size(); ++i) CHECK(serial_cap[i].image == parallel_cap[i].image);
    }
}

TEST_CASE("every reported embedding preserves distances") {
    std::mt19937_64 rng(31);
    const std::vector<Rational> pool{Rational(1), Rational(2)};
    for (int round = 0; round < 10; ++round) {
        const FiniteMetricSpace target = testsupport::random_metric(rng, 6, pool);
        const FiniteMetricSpace pattern = target.restrict({1, 3, 5});
        for (const auto& e : isometric_embeddings(pattern, target)) {
            REQUIRE(e.image.size() == pattern.size());
            for (std::size_t i = 0; i < pattern.size(); ++i)
                for (std::size_t j = 0; j < pattern.size(); ++j)
                    CHECK(pattern.d(i, j) == target.d(e.image[i], e.image[j]));
        }
        // Restriction always embeds back.
        CHECK(embeds(pattern, target));
    }
}

TEST_CASE("monochromatic part finds a surviving color class") {
    const FiniteMetricSpace f = pair_space("a", "b", Rational(1));
    const FiniteMetricSpace g = sup_power(f, 2);  // points (a,a),(a,b),(b,a),(b,b)

    CHECK(monochromatic_part(f, g, {0, 0, 1, 1}) == std::vector<int>{0, 1});
    CHECK(monochromatic_part(f, g, {0, 0, 0, 0}) == std::vector<int>{0});

    for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> coloring(4);
        for (int i = 0; i < 4; ++i) coloring[i] = (mask >> i) & 1;
        CHECK(!monochromatic_part(f, g, coloring).empty());
    }

    CHECK_THROWS_AS(monochromatic_part(f, g, {0, 1}), SpaceError);
    CHECK_THROWS_AS(monochromatic_part(f, g, {0, 1, 2, 0}), SpaceError);
}
