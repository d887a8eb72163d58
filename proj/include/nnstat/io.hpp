#pragma once

#include <iosfwd>
#include <string>

#include "nnstat/point_sample.hpp"

namespace nnstat {

/// Point file parse failure with position diagnostics in the message.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV, one point per row, `dim` numeric columns; a single non-numeric first
/// row is accepted as a header. The column count of the first data row fixes
/// the dimension.
PointSample read_points_csv(std::istream& in);

/// JSON array of coordinate arrays; a flat array of numbers is read as 1-D.
PointSample read_points_json(std::istream& in);

/// Dispatches on content: files starting with '[' parse as JSON, everything
/// else as CSV.
PointSample read_points_file(const std::string& path);

}  // namespace nnstat
