#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nnstat/nn_digraph.hpp"
#include "nnstat/rng.hpp"

using namespace nnstat;

namespace {

PairCounts counts_of(const PointSample& s) { return count_pairs(build_nn_digraph(s)); }

std::vector<double> random_coords(Xoshiro256pp& rng, int n, int dim) {
    std::vector<double> c(static_cast<std::size_t>(n) * dim);
    for (double& v : c) v = rng.next_unit();
    return c;
}

void check_pair_count_invariants(const PairCounts& counts, std::size_t n, int dim) {
    std::int64_t vertices = 0, arcs = 0, choose2 = 0;
    for (auto [j, c] : counts.indegree_classes) {
        CHECK(c > 0);
        vertices += c;
        arcs += static_cast<std::int64_t>(j) * c;
        choose2 += static_cast<std::int64_t>(j) * (j - 1) / 2 * c;
    }
    CHECK(vertices == static_cast<std::int64_t>(n));
    CHECK(arcs == static_cast<std::int64_t>(n));
    CHECK(counts.shared == choose2);
    CHECK(counts.reflexive >= 1);
    if (dim == 1) {
        for (auto [j, c] : counts.indegree_classes) CHECK(j <= 2);
        auto q1 = counts.indegree_classes.count(1) ? counts.indegree_classes.at(1) : 0;
        CHECK(2 * counts.shared == static_cast<std::int64_t>(n) - q1);
    }
}

}  // namespace

TEST_CASE("worked 1-D example") {
    auto sample = PointSample::from_values({0.1, 0.2, 0.5, 0.9});
    auto g = build_nn_digraph(sample);
    CHECK(g.nn_index == std::vector<std::uint32_t>{1, 0, 1, 2});
    CHECK_FALSE(g.tie_flag);
    CHECK(g.nn_distance[0] == doctest::Approx(0.1));
    CHECK(g.nn_distance[3] == doctest::Approx(0.4));

    auto counts = count_pairs(g);
    CHECK(counts.reflexive == 1);
    CHECK(counts.shared == 1);
    CHECK(counts.indegree_classes == std::map<int, std::int64_t>{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("two points are always mutual") {
    auto counts = counts_of(PointSample::from_values({0.0, 1.0}));
    CHECK(counts.reflexive == 1);
    CHECK(counts.shared == 0);
}

TEST_CASE("worked 2-D example") {
    auto sample = PointSample(2, {0, 0, 1, 0, 5, 5});
    auto g = build_nn_digraph(sample);
    CHECK(g.nn_index == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(g.nn_distance[2] == doctest::Approx(std::sqrt(41.0)));
    auto counts = count_pairs(g);
    CHECK(counts.reflexive == 1);
    CHECK(counts.shared == 1);  // (0,0) and (5,5) share (1,0)
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(PointSample::from_values({0.5}), std::invalid_argument);
    CHECK_THROWS_AS(PointSample(2, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(PointSample(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(PointSample::from_values({0.1, 0.2, 0.1}), DuplicatePointsError);
    try {
        PointSample(2, {0, 0, 3, 4, 0, 0});
        FAIL("expected DuplicatePointsError");
    } catch (const DuplicatePointsError& e) {
        CHECK(e.first == 0);
        CHECK(e.second == 2);
        CHECK(std::string(e.what()).find("zero distance") != std::string::npos);
    }
    CHECK_THROWS_AS(PointSample::from_values({0.1, std::nan("")}), std::invalid_argument);
}

TEST_CASE("ties resolve to the smallest index and are flagged") {
    // middle point equidistant from both neighbours
    auto g = build_nn_digraph(PointSample::from_values({0.0, 0.25, 0.5}));
    CHECK(g.tie_flag);
    CHECK(g.nn_index[1] == 0);

    // after reordering, the smaller original index is on the other side
    auto g2 = build_nn_digraph(PointSample::from_values({0.5, 0.25, 0.0}));
    CHECK(g2.tie_flag);
    CHECK(g2.nn_index[1] == 0);  // point 0 now holds the value 0.5

    auto g3 = build_nn_digraph(PointSample(2, {0, 0, 1, 0, -1, 0}));
    CHECK(g3.tie_flag);
    CHECK(g3.nn_index[0] == 1);
}

TEST_CASE("digraph invariants against the exhaustive distance oracle") {
    Xoshiro256pp rng(7, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next() % 3);
        const int n = 2 + static_cast<int>(rng.next() % 40);
        PointSample sample(dim, random_coords(rng, n, dim));
        auto g = build_nn_digraph(sample);
        for (std::size_t v = 0; v < sample.size(); ++v) {
            CHECK(g.nn_index[v] != v);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t w = 0; w < sample.size(); ++w) {
                if (w == v) continue;
                double d2 = 0;
                for (int k = 0; k < dim; ++k) {
                    double diff = sample.point(v)[k] - sample.point(w)[k];
                    d2 += diff * diff;
                }
                best = std::min(best, d2);
            }
            CHECK(g.nn_distance[v] == doctest::Approx(std::sqrt(best)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pair count invariants on random samples in several dimensions") {
    Xoshiro256pp rng(11, 0);
    for (int trial = 0; trial < 80; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next() % 4);
        const int n = 2 + static_cast<int>(rng.next() % 60);
        PointSample sample(dim, random_coords(rng, n, dim));
        check_pair_count_invariants(counts_of(sample), sample.size(), dim);
    }
}

TEST_CASE("counts are invariant under permutation, translation and scaling") {
    Xoshiro256pp rng(13, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next() % 2);
        const int n = 3 + static_cast<int>(rng.next() % 30);
        auto coords = random_coords(rng, n, dim);
        auto base = counts_of(PointSample(dim, coords));

        // shuffle whole points
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next() % i]);
        std::vector<double> shuffled;
        shuffled.reserve(coords.size());
        for (auto idx : order)
            for (int k = 0; k < dim; ++k) shuffled.push_back(coords[idx * dim + k]);
        auto permuted = counts_of(PointSample(dim, shuffled));
        CHECK(permuted.reflexive == base.reflexive);
        CHECK(permuted.shared == base.shared);
        CHECK(permuted.indegree_classes == base.indegree_classes);

        // exact affine map: power-of-two scale plus a representable shift
        std::vector<double> mapped = coords;
        for (double& v : mapped) v = v * 4.0 + 1.0;
        auto affine = counts_of(PointSample(dim, mapped));
        CHECK(affine.reflexive == base.reflexive);
        CHECK(affine.shared == base.shared);
        CHECK(affine.indegree_classes == base.indegree_classes);
    }
}

TEST_CASE("1-D fast path agrees with the brute-force scan") {
    Xoshiro256pp rng(17, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 50);
        auto coords = random_coords(rng, n, 1);
        auto fast = counts_of(PointSample(1, coords));
        auto brute = pair_counts_bruteforce(1, coords);
        CHECK(fast.reflexive == brute.reflexive);
        CHECK(fast.shared == brute.shared);
        CHECK(fast.indegree_classes == brute.indegree_classes);

        std::vector<double> sorted = coords;
        std::sort(sorted.begin(), sorted.end());
        auto lean = pair_counts_1d_sorted(sorted);
        CHECK(lean.reflexive == fast.reflexive);
        CHECK(lean.shared == fast.shared);
        CHECK(lean.indegree_classes == fast.indegree_classes);
    }
}
