#pragma once

#include <span>
#include <vector>

#include "nnstat/errors.hpp"

namespace nnstat {

/// A validated point cloud: n >= 2 points in `dim` dimensions, coordinates
/// finite, points pairwise distinct (checked exactly on the stored values).
class PointSample {
public:
    /// `coords` is row-major, size n * dim. Throws std::invalid_argument on a
    /// shape problem and DuplicatePointsError on coincident points.
    PointSample(int dim, std::vector<double> coords);

    static PointSample from_values(std::vector<double> values);  // dim = 1

    int dim() const { return dim_; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& coords() const { return coords_; }

private:
    int dim_;
    std::vector<double> coords_;
};

}  // namespace nnstat
