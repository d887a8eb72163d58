#pragma once

#include <cstddef>
#include <stdexcept>

namespace nnstat {

/// Input data that break the continuous-sample assumptions (exactly
/// coincident points, exactly tied spacings).
struct DegenerateDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DuplicatePointsError : DegenerateDataError {
    DuplicatePointsError(std::size_t first, std::size_t second);
    std::size_t first;   // point indices with zero distance, first < second
    std::size_t second;
};

struct TiedSpacingsError : DegenerateDataError {
    TiedSpacingsError(std::size_t first, std::size_t second);
    std::size_t first;   // 1-based spacing indices of the first tie found
    std::size_t second;
};

}  // namespace nnstat
