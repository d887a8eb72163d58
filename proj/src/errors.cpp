#include "nnstat/errors.hpp"

#include <string>

namespace nnstat {

DuplicatePointsError::DuplicatePointsError(std::size_t a, std::size_t b)
    : DegenerateDataError("zero distance between points " + std::to_string(a) + " and " +
                          std::to_string(b)),
      first(a),
      second(b) {}

TiedSpacingsError::TiedSpacingsError(std::size_t a, std::size_t b)
    : DegenerateDataError("tied spacings at " + std::to_string(a) + "," + std::to_string(b)),
      first(a),
      second(b) {}

}  // namespace nnstat
