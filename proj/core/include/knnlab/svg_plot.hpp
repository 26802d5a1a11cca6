#pragma once

#include <string>

#include "knnlab/csv.hpp"

namespace knnlab {

// Static SVG 1.1 line/scatter chart of column y against column x. The byte
// output is a pure function of the table and column names. Throws
// std::invalid_argument on a missing column or an empty table.
std::string render_svg_chart(const CsvTable& table, const std::string& x_column,
                             const std::string& y_column);

}  // namespace knnlab
