#pragma once

#include <string>
#include <vector>

#include "fractalcap/sweep.hpp"

namespace fractalcap {

// Log-log scatter of (x_column, y_column) from sweep rows plus the fitted
// line with its slope annotated. Output is a standalone SVG whose bytes are
// fully determined by the input rows. Column names follow the sweep CSV
// header; values must be positive. Throws std::invalid_argument on unknown
// columns or empty input.
void emit_plot(const std::vector<SweepRow>& rows, const std::string& x_column,
               const std::string& y_column, const std::string& path);

}  // namespace fractalcap
