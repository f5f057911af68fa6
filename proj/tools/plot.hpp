#pragma once

#include <string>
#include <vector>

namespace gsqg::cli {

// Single-series line plot as a standalone SVG; non-finite y values break the line.
void write_line_plot_svg(const std::string& path, const std::string& title, const std::string& xlabel,
                         const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gsqg::cli
