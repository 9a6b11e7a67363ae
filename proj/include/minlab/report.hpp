#pragma once

#include <string>
#include <utility>
#include <vector>

namespace minlab::report {

// Fixed-format float used in every artifact so that identical runs emit
// identical bytes.
std::string num(double v);

void write_text_file(const std::string& path, const std::string& content);

// UTF-8 CSV with a header row and '.' decimal separator.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Static single-series SVG line/scatter plot.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<std::pair<double, double>>& points,
                    bool log_y = false);

}  // namespace minlab::report
