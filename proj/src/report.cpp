#include "minlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "minlab/errors.hpp"

namespace minlab::report {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string text;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) text += ',';
        text += header[i];
    }
    text += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += row[i];
        }
        text += '\n';
    }
    write_text_file(path, text);
}

namespace {

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<std::pair<double, double>>& points,
                    bool log_y) {
    const double W = 640, H = 400, ML = 70, MR = 20, MT = 40, MB = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    std::vector<std::pair<double, double>> pts;
    for (auto [x, y] : points) {
        if (log_y) {
            if (y <= 0) continue;
            y = std::log10(y);
        }
        pts.push_back({x, y});
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
        } else {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
    s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"14\">" + title + "</text>\n";
    s += "<line x1=\"" + coord(ML) + "\" y1=\"" + coord(H - MB) + "\" x2=\"" +
         coord(W - MR) + "\" y2=\"" + coord(H - MB) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + coord(ML) + "\" y1=\"" + coord(MT) + "\" x2=\"" + coord(ML) +
         "\" y2=\"" + coord(H - MB) + "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        double fx = xmin + (xmax - xmin) * k / 4.0;
        double fy = ymin + (ymax - ymin) * k / 4.0;
        s += "<text x=\"" + coord(px(fx)) + "\" y=\"" + coord(H - MB + 18) +
             "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">" +
             num(fx) + "</text>\n";
        std::string ylab = log_y ? "1e" + num(fy) : num(fy);
        s += "<text x=\"" + coord(ML - 6) + "\" y=\"" + coord(py(fy) + 3) +
             "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" +
             ylab + "</text>\n";
    }
    if (!pts.empty()) {
        s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (size_t k = 0; k < pts.size(); ++k) {
            if (k) s += ' ';
            s += coord(px(pts[k].first)) + "," + coord(py(pts[k].second));
        }
        s += "\"/>\n";
        for (const auto& [x, y] : pts)
            s += "<circle cx=\"" + coord(px(x)) + "\" cy=\"" + coord(py(y)) +
                 "\" r=\"2\" fill=\"steelblue\"/>\n";
    }
    s += "</svg>\n";
    write_text_file(path, s);
}

}  // namespace minlab::report
