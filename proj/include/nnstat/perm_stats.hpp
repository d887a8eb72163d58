#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nnstat/nn_digraph.hpp"
#include "nnstat/point_sample.hpp"

namespace nnstat {

/// Interior spacings of a 1-D sample: differences of consecutive order
/// statistics, length n - 1, all strictly positive.
std::vector<double> spacings(const PointSample& sample);

/// sigma[i] = rank of spacing i+1 among all spacings, 1 = smallest. A valid
/// instance is a bijection on {1..m}.
struct RankPermutation {
    std::vector<int> sigma;

    std::size_t size() const { return sigma.size(); }

    /// Validates that `ranks` is a permutation of 1..m.
    static RankPermutation from_ranks(std::vector<int> ranks);
};

/// Throws TiedSpacingsError when two spacings compare exactly equal.
RankPermutation rank_permutation(std::span<const double> spacing_values);

/// Number of local minima where the ends also count when smaller than their
/// single neighbour. Requires length >= 2; equals the reflexive pair count of
/// the sample the ranks came from.
std::int64_t reflexive_indicator_count(std::span<const int> sigma);

/// Indicator sum for shared-NN pairs. Requires length >= 3; equals the
/// shared pair count of the sample the ranks came from.
std::int64_t shared_indicator_count(std::span<const int> sigma);

std::int64_t reflexive_indicator_count(const RankPermutation& p);
std::int64_t shared_indicator_count(const RankPermutation& p);

/// Length of the longest subsequence x_{i1} > x_{i2} < x_{i3} > ... (strict,
/// starting with a descent). Entries must be pairwise distinct, input
/// nonempty. Single pass, O(n).
std::int64_t longest_alternating_subsequence(std::span<const double> values);
std::int64_t longest_alternating_subsequence(std::span<const int> values);

struct ExtremaCounts {
    std::int64_t minima = 0;
    std::int64_t maxima = 0;
};

/// Interior local extrema only (positions 2..n-1); ends never count.
ExtremaCounts local_extrema_counts(std::span<const double> values);
ExtremaCounts local_extrema_counts(std::span<const int> values);

/// Pair counts implied by a spacing-rank permutation alone: reconstructs the
/// NN choice of every order statistic (n = m + 1 points) and counts. Valid
/// for any m >= 1, unlike the indicator sums.
PairCounts pair_counts_from_spacing_ranks(std::span<const int> sigma);

}  // namespace nnstat
