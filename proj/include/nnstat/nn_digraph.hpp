#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "nnstat/point_sample.hpp"

namespace nnstat {

/// Each vertex points at its unique nearest neighbour under Euclidean
/// distance. Ties are resolved to the smallest point index; tie_flag records
/// that at least one vertex had more than one exact minimizer, so counts are
/// convention-dependent.
struct NnDigraph {
    int dim = 1;
    std::vector<std::uint32_t> nn_index;
    std::vector<double> nn_distance;
    bool tie_flag = false;

    std::size_t size() const { return nn_index.size(); }
};

struct PairCounts {
    std::int64_t reflexive = 0;  // unordered pairs that are each other's NN
    std::int64_t shared = 0;     // unordered pairs whose NN is the same vertex
    // j -> number of vertices that are the NN of exactly j other vertices;
    // only observed j are stored.
    std::map<int, std::int64_t> indegree_classes;
};

/// dim = 1 runs in O(n log n) on sorted adjacent spacings; higher dimensions
/// use the O(n^2) scan.
NnDigraph build_nn_digraph(const PointSample& sample);

PairCounts count_pairs(const NnDigraph& digraph);

/// Lean kernels for simulation loops; no validation, no digraph object.
/// `sorted` must be ascending. Ties resolve to the left neighbour here (the
/// original input order is gone after sorting).
PairCounts pair_counts_1d_sorted(std::span<const double> sorted);

/// Brute-force O(n^2) nearest-neighbour counts, coords row-major.
PairCounts pair_counts_bruteforce(int dim, std::span<const double> coords);

}  // namespace nnstat
