#include "nnstat/perm_stats.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nnstat {

std::vector<double> spacings(const PointSample& sample) {
    if (sample.dim() != 1) throw std::invalid_argument("spacings need a 1-D sample");
    std::vector<double> sorted = sample.coords();
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> gaps(sorted.size() - 1);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gaps[i] = sorted[i + 1] - sorted[i];
    return gaps;  // all positive: PointSample rejects duplicates
}

RankPermutation RankPermutation::from_ranks(std::vector<int> ranks) {
    std::vector<bool> seen(ranks.size(), false);
    for (int r : ranks) {
        if (r < 1 || r > static_cast<int>(ranks.size()) || seen[r - 1])
            throw std::invalid_argument("ranks are not a permutation of 1..m");
        seen[r - 1] = true;
    }
    return RankPermutation{std::move(ranks)};
}

RankPermutation rank_permutation(std::span<const double> spacing_values) {
    const std::size_t m = spacing_values.size();
    if (m == 0) throw std::invalid_argument("empty spacing vector");
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return spacing_values[a] < spacing_values[b];
    });
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (spacing_values[order[i]] == spacing_values[order[i + 1]])
            throw TiedSpacingsError(order[i] + 1, order[i + 1] + 1);

    RankPermutation p;
    p.sigma.resize(m);
    for (std::size_t i = 0; i < m; ++i) p.sigma[order[i]] = static_cast<int>(i) + 1;
    return p;
}

std::int64_t reflexive_indicator_count(std::span<const int> sigma) {
    const std::size_t m = sigma.size();
    if (m < 2) throw std::invalid_argument("need at least 2 spacings (n >= 3)");
    std::int64_t count = 0;
    if (sigma[0] < sigma[1]) ++count;
    for (std::size_t i = 1; i + 1 < m; ++i)
        if (sigma[i] < sigma[i - 1] && sigma[i] < sigma[i + 1]) ++count;
    if (sigma[m - 1] < sigma[m - 2]) ++count;
    return count;
}

std::int64_t shared_indicator_count(std::span<const int> sigma) {
    const std::size_t m = sigma.size();
    if (m < 3) throw std::invalid_argument("need at least 3 spacings (n >= 4)");
    std::int64_t count = 0;
    if (sigma[1] < sigma[2]) ++count;
    for (std::size_t i = 2; i + 2 <= m; ++i)  // events indexed 2..m-2, 1-based
        if (sigma[i - 1] < sigma[i - 2] && sigma[i] < sigma[i + 1]) ++count;
    if (sigma[m - 2] < sigma[m - 3]) ++count;
    return count;
}

std::int64_t reflexive_indicator_count(const RankPermutation& p) {
    return reflexive_indicator_count(std::span<const int>(p.sigma));
}

std::int64_t shared_indicator_count(const RankPermutation& p) {
    return shared_indicator_count(std::span<const int>(p.sigma));
}

namespace {

// Tracks, over the processed prefix, the best subsequence ending on a peak
// (odd pattern position, next relation must descend) and on a valley (even
// position, next must ascend), together with the most extendable attained
// end value for each.
template <typename T>
std::int64_t longest_alternating_impl(std::span<const T> xs) {
    if (xs.empty()) throw std::invalid_argument("empty sequence");
    std::int64_t peak_len = 0, valley_len = 0;
    T peak_top{};    // largest end among optimal peak subsequences
    T valley_bot{};  // smallest end among optimal valley subsequences
    for (const T& x : xs) {
        std::int64_t cand_peak = 1;
        if (valley_len > 0 && x > valley_bot) cand_peak = valley_len + 1;
        std::int64_t cand_valley = (peak_len > 0 && x < peak_top) ? peak_len + 1 : 0;
        if (cand_peak > peak_len) {
            peak_len = cand_peak;
            peak_top = x;
        } else if (cand_peak == peak_len && x > peak_top) {
            peak_top = x;
        }
        if (cand_valley > valley_len) {
            valley_len = cand_valley;
            valley_bot = x;
        } else if (cand_valley > 0 && cand_valley == valley_len && x < valley_bot) {
            valley_bot = x;
        }
    }
    return std::max(peak_len, valley_len);
}

template <typename T>
ExtremaCounts local_extrema_impl(std::span<const T> xs) {
    ExtremaCounts out;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (xs[i] < xs[i - 1] && xs[i] < xs[i + 1]) ++out.minima;
        if (xs[i] > xs[i - 1] && xs[i] > xs[i + 1]) ++out.maxima;
    }
    return out;
}

}  // namespace

std::int64_t longest_alternating_subsequence(std::span<const double> values) {
    return longest_alternating_impl(values);
}

std::int64_t longest_alternating_subsequence(std::span<const int> values) {
    return longest_alternating_impl(values);
}

ExtremaCounts local_extrema_counts(std::span<const double> values) {
    return local_extrema_impl(values);
}

ExtremaCounts local_extrema_counts(std::span<const int> values) {
    return local_extrema_impl(values);
}

PairCounts pair_counts_from_spacing_ranks(std::span<const int> sigma) {
    const std::size_t m = sigma.size();
    if (m < 1) throw std::invalid_argument("need at least 1 spacing");
    const std::size_t n = m + 1;

    // nn_right(p): order statistic p points at its right neighbour. Spacing
    // p sits between positions p and p+1.
    auto nn_right = [&sigma, n](std::size_t p) -> bool {
        if (p == 0) return true;
        if (p == n - 1) return false;
        return sigma[p] < sigma[p - 1];
    };

    PairCounts out;
    std::int64_t cls[3] = {0, 0, 0};
    for (std::size_t p = 0; p < n; ++p) {
        int indeg = 0;
        if (p > 0 && nn_right(p - 1)) ++indeg;
        if (p + 1 < n && !nn_right(p + 1)) ++indeg;
        ++cls[indeg];
        if (p + 1 < n && nn_right(p) && !nn_right(p + 1)) ++out.reflexive;
    }
    out.shared = cls[2];
    for (int j = 0; j < 3; ++j)
        if (cls[j] > 0) out.indegree_classes[j] = cls[j];
    return out;
}

}  // namespace nnstat
