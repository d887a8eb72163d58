#include "nnstat/point_sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nnstat {

PointSample::PointSample(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw std::invalid_argument("dimension must be >= 1");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::invalid_argument("coordinate count is not a multiple of the dimension");
    const std::size_t n = coords_.size() / static_cast<std::size_t>(dim_);
    if (n < 2) throw std::invalid_argument("need at least 2 points");
    for (double v : coords_)
        if (!std::isfinite(v)) throw std::invalid_argument("coordinates must be finite");

    // Exact duplicate detection: lexicographic sort, then adjacent compare.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    const double* c = coords_.data();
    const std::size_t d = static_cast<std::size_t>(dim_);
    auto lex_less = [c, d](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(c + a * d, c + a * d + d, c + b * d, c + b * d + d);
    };
    std::sort(order.begin(), order.end(), lex_less);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::uint32_t a = order[i], b = order[i + 1];
        if (std::equal(c + a * d, c + a * d + d, c + b * d))
            throw DuplicatePointsError(std::min(a, b), std::max(a, b));
    }
}

PointSample PointSample::from_values(std::vector<double> values) {
    return PointSample(1, std::move(values));
}

}  // namespace nnstat
