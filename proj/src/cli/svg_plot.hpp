#pragma once

#include <cstddef>
#include <string>

#include "table.hpp"

namespace tentlab::cli {

enum class PlotStyle { line, scatter };

/// Deterministic 800x500 SVG of column `y_col` against column `x_col`, axes
/// labeled from the header. Throws std::invalid_argument on a non-numeric
/// cell or an out-of-range column.
std::string render_plot(const TableFile& table, PlotStyle style, std::size_t x_col = 0, std::size_t y_col = 1);

PlotStyle parse_style(const std::string& name);

}  // namespace tentlab::cli
