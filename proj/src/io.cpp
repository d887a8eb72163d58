#include "nnstat/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nnstat {

namespace {

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end != '\0') {
        if (!std::isspace(static_cast<unsigned char>(*end))) return false;
        ++end;
    }
    return std::isfinite(out);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool blank(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

PointSample read_points_csv(std::istream& in) {
    std::vector<double> coords;
    int dim = 0;
    std::size_t row = 0, data_rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;
        const auto fields = split_csv_row(line);

        std::vector<double> values(fields.size());
        bool numeric = true;
        std::size_t bad_col = 0;
        for (std::size_t col = 0; col < fields.size(); ++col) {
            if (!parse_double(fields[col], values[col])) {
                numeric = false;
                bad_col = col + 1;
                break;
            }
        }
        if (!numeric) {
            if (data_rows == 0 && row == 1) continue;  // single header row
            throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(bad_col) +
                             ": not a finite number: '" + fields[bad_col - 1] + "'");
        }
        if (data_rows == 0) {
            dim = static_cast<int>(values.size());
        } else if (static_cast<int>(values.size()) != dim) {
            throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(dim) +
                             " columns, got " + std::to_string(values.size()));
        }
        coords.insert(coords.end(), values.begin(), values.end());
        ++data_rows;
    }
    if (data_rows < 2) throw ParseError("need at least 2 data rows");
    return PointSample(dim, std::move(coords));
}

PointSample read_points_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty JSON array of points");

    std::vector<double> coords;
    if (j.front().is_number()) {  // flat array of numbers -> 1-D points
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number())
                throw ParseError("element " + std::to_string(i + 1) + ": expected a number");
            coords.push_back(j[i].get<double>());
        }
        return PointSample(1, std::move(coords));
    }

    int dim = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& pt = j[i];
        if (!pt.is_array() || pt.empty())
            throw ParseError("point " + std::to_string(i + 1) + ": expected a coordinate array");
        if (i == 0) {
            dim = static_cast<int>(pt.size());
        } else if (static_cast<int>(pt.size()) != dim) {
            throw ParseError("point " + std::to_string(i + 1) + ": expected " +
                             std::to_string(dim) + " coordinates, got " + std::to_string(pt.size()));
        }
        for (std::size_t c = 0; c < pt.size(); ++c) {
            if (!pt[c].is_number())
                throw ParseError("point " + std::to_string(i + 1) + ", coordinate " +
                                 std::to_string(c + 1) + ": expected a number");
            coords.push_back(pt[c].get<double>());
        }
    }
    return PointSample(dim, std::move(coords));
}

PointSample read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    int c = in.peek();
    while (c != EOF && std::isspace(c)) {
        in.get();
        c = in.peek();
    }
    if (c == '[') return read_points_json(in);
    return read_points_csv(in);
}

}  // namespace nnstat
