#pragma once

#include <string>
#include <vector>

namespace steiner {

// Deterministic SVG emitters: fixed canvas, fixed fonts, %.6g coordinates,
// no timestamps. Same data, same bytes.

std::string svg_loglog(const std::vector<std::pair<double, double>>& points,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::string& title);

// Two heatmaps side by side (same color scale), data row-major rows x cols.
std::string svg_heatmap_pair(const std::vector<double>& left,
                             const std::vector<double>& right, int rows,
                             int cols, const std::string& left_title,
                             const std::string& right_title);

// One point series per component, x = abscissa index.
std::string svg_scatter(const std::vector<double>& x,
                        const std::vector<std::vector<double>>& series,
                        const std::vector<std::string>& names,
                        const std::string& xlabel, const std::string& title);

} // namespace steiner
