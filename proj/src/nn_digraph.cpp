#include "nnstat/nn_digraph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nnstat {

namespace {

PairCounts counts_from_nn(std::span<const std::uint32_t> nn) {
    const std::size_t n = nn.size();
    std::vector<std::int64_t> indeg(n, 0);
    for (std::size_t u = 0; u < n; ++u) ++indeg[nn[u]];

    PairCounts out;
    for (std::size_t u = 0; u < n; ++u) {
        std::uint32_t v = nn[u];
        if (v > u && nn[v] == u) ++out.reflexive;
    }
    for (std::size_t v = 0; v < n; ++v) {
        ++out.indegree_classes[static_cast<int>(indeg[v])];
        out.shared += indeg[v] * (indeg[v] - 1) / 2;
    }

    assert(out.reflexive >= 1);
    assert(([&] {
        std::int64_t vertices = 0, arcs = 0;
        for (const auto& kv : out.indegree_classes) {
            vertices += kv.second;
            arcs += static_cast<std::int64_t>(kv.first) * kv.second;
        }
        return vertices == static_cast<std::int64_t>(n) && arcs == static_cast<std::int64_t>(n);
    }()));
    return out;
}

}  // namespace

NnDigraph build_nn_digraph(const PointSample& sample) {
    const std::size_t n = sample.size();
    NnDigraph g;
    g.dim = sample.dim();
    g.nn_index.resize(n);
    g.nn_distance.resize(n);

    if (sample.dim() == 1) {
        const std::vector<double>& x = sample.coords();
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&x](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
        // The NN of an order statistic is one of its sorted neighbours, so
        // only adjacent spacings compete.
        for (std::size_t p = 0; p < n; ++p) {
            std::uint32_t self = order[p];
            bool go_right;
            if (p == 0) {
                go_right = true;
            } else if (p == n - 1) {
                go_right = false;
            } else {
                double left = x[self] - x[order[p - 1]];
                double right = x[order[p + 1]] - x[self];
                if (left < right) {
                    go_right = false;
                } else if (right < left) {
                    go_right = true;
                } else {
                    g.tie_flag = true;
                    go_right = order[p + 1] < order[p - 1];
                }
            }
            std::uint32_t nb = go_right ? order[p + 1] : order[p - 1];
            g.nn_index[self] = nb;
            g.nn_distance[self] = std::abs(x[nb] - x[self]);
        }
        return g;
    }

    const double* c = sample.coords().data();
    const std::size_t d = static_cast<std::size_t>(sample.dim());
    for (std::size_t u = 0; u < n; ++u) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t best_v = 0;
        int minimizers = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            double dist2 = 0;
            for (std::size_t k = 0; k < d; ++k) {
                double diff = c[u * d + k] - c[v * d + k];
                dist2 += diff * diff;
            }
            if (dist2 < best) {
                best = dist2;
                best_v = static_cast<std::uint32_t>(v);
                minimizers = 1;
            } else if (dist2 == best) {
                ++minimizers;
            }
        }
        if (minimizers > 1) g.tie_flag = true;
        g.nn_index[u] = best_v;
        g.nn_distance[u] = std::sqrt(best);
    }
    return g;
}

PairCounts count_pairs(const NnDigraph& digraph) {
    if (digraph.size() < 2) throw std::invalid_argument("digraph needs at least 2 vertices");
    return counts_from_nn(digraph.nn_index);
}

PairCounts pair_counts_1d_sorted(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    if (n < 2) throw std::invalid_argument("need at least 2 points");

    // nn_right(p): the NN of sorted position p is its right neighbour.
    // Ties go left, matching the smaller sorted index.
    auto nn_right = [&sorted, n](std::size_t p) -> bool {
        if (p == 0) return true;
        if (p == n - 1) return false;
        return (sorted[p + 1] - sorted[p]) < (sorted[p] - sorted[p - 1]);
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

    assert(out.reflexive >= 1);
    assert(cls[0] + cls[1] + cls[2] == static_cast<std::int64_t>(n));
    assert(cls[1] + 2 * cls[2] == static_cast<std::int64_t>(n));
    assert(out.shared == cls[0]);  // in 1-D, lonely and popular vertices balance
    return out;
}

PairCounts pair_counts_bruteforce(int dim, std::span<const double> coords) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    const std::size_t d = static_cast<std::size_t>(dim);
    const std::size_t n = coords.size() / d;
    if (n < 2 || coords.size() % d != 0) throw std::invalid_argument("bad coordinate array");

    std::vector<std::uint32_t> nn(n);
    const double* c = coords.data();
    for (std::size_t u = 0; u < n; ++u) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t best_v = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            double dist2 = 0;
            for (std::size_t k = 0; k < d; ++k) {
                double diff = c[u * d + k] - c[v * d + k];
                dist2 += diff * diff;
            }
            if (dist2 < best) {
                best = dist2;
                best_v = static_cast<std::uint32_t>(v);
            }
        }
        nn[u] = best_v;
    }
    return counts_from_nn(nn);
}

}  // namespace nnstat
