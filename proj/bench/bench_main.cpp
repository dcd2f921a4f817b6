// Wall-clock comparison of the OpenMP kernels against their serial
// references: the four-values scan and the embedding search. Both variants
// must produce identical results; the serial one is the reference the tests
// trust, the parallel one is the default for large inputs.
//
// Usage: vmet_bench [values_n] [space_n] [reps]

#include "vmet/embed.hpp"
#include "vmet/space.hpp"
#include "vmet/value_set.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#ifdef VMET_HAVE_OPENMP
#include <omp.h>
#endif
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace vmet;

namespace {

double seconds_of(const std::function<void()>& work, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        work();
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (t < best) best = t;
    }
    return best;
}

FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t n, const std::vector<Rational>& pool) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = pool[pick(rng)];
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) d[i][j] = min(d[i][j], d[i][k] + d[k][j]);
    return FiniteMetricSpace::make(labels, d);
}

void report(const char* name, const std::string& input, double serial, double parallel, bool agree) {
    std::printf("%-18s %-14s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   agree: %s\n", name, input.c_str(),
                serial, parallel, parallel > 0 ? serial / parallel : 0.0, agree ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t values_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 40;
    const std::size_t space_n = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 96;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;

#ifdef VMET_HAVE_OPENMP
    std::printf("OpenMP enabled, %d thread(s); best of %d runs\n", omp_get_max_threads(), reps);
#else
    std::printf("OpenMP NOT available; the parallel variants fall back to serial. Best of %d runs\n", reps);
#endif

    // Integer initial segments satisfy the four-values condition, so the scan
    // never exits early: this times the full quadruple sweep.
    {
        std::vector<Rational> vals;
        for (std::size_t k = 0; k <= values_n; ++k) vals.emplace_back(static_cast<long>(k));
        const ValueSet V = ValueSet::make(vals);
        FourValuesResult rs, rp;
        const double ts = seconds_of([&] { rs = four_values_check(V); }, reps);
        const double tp = seconds_of([&] { rp = four_values_check_parallel(V); }, reps);
        report("four-values scan", "|V|=" + std::to_string(values_n + 1), ts, tp,
               rs.ok() == rp.ok() && rs.counterexample == rp.counterexample);
    }

    // Enumerate every embedding of a 5-point subspace back into its host.
    {
        std::mt19937_64 rng(7);
        const FiniteMetricSpace target =
            random_metric(rng, space_n, {Rational(1), Rational(3, 2), Rational(2), Rational(3)});
        std::vector<std::size_t> picks;
        for (std::size_t i = 0; i < 5 && i * (space_n / 5) < space_n; ++i) picks.push_back(i * (space_n / 5));
        const FiniteMetricSpace pattern = target.restrict(picks);
        std::vector<Embedding> es, ep;
        const double ts = seconds_of([&] { es = isometric_embeddings(pattern, target); }, reps);
        const double tp = seconds_of([&] { ep = isometric_embeddings_parallel(pattern, target); }, reps);
        bool agree = es.size() == ep.size();
        for (std::size_t i = 0; agree && i < es.size(); ++i) agree = es[i].image == ep[i].image;
        report("embedding search", std::to_string(pattern.size()) + " -> " + std::to_string(space_n), ts, tp, agree);
        std::printf("%-18s %zu embeddings found\n", "", es.size());
    }
    return 0;
}
