#ifndef MLNDS_IO_HEATMAP_SVG_HPP_
#define MLNDS_IO_HEATMAP_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "../analysis.hpp"

namespace mlnds {

namespace svg {

inline constexpr std::string_view grey = "#bdbdbd";
inline constexpr int tile_w = 96;
inline constexpr int tile_h = 72;
inline constexpr int margin_left = 70;
inline constexpr int margin_top = 40;
inline constexpr int margin_bottom = 50;

inline std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::string hex(int r, int g, int b) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

/// Diverging scale centred on 50%: 100% is the green end, 0% the red end,
/// 50% is white.
inline std::string tile_colour(std::optional<double> pct) {
    if (!pct)
        return std::string(grey);
    struct Rgb {
        double r, g, b;
    };
    constexpr Rgb white{255, 255, 255}, green{26, 152, 80}, red{215, 48, 39};
    double t = std::clamp((*pct - 50.0) / 50.0, -1.0, 1.0);
    const Rgb& end = t >= 0 ? green : red;
    double w = std::abs(t);
    auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + (b - a) * w)); };
    return hex(mix(white.r, end.r), mix(white.g, end.g), mix(white.b, end.b));
}

inline std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.00")
        s = "0.00";
    return s;
}

inline std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace svg

class RaggedGrid : public Error {
public:
    using Error::Error;
};

/// Standalone SVG with one tile per (mu, budget). Each tile shows the mean
/// delta on top, significant | insignificant counts in the middle, and
/// no-start | mds-too-small failures at the bottom. Budgets are labelled in
/// percent of actors.
inline std::string render_heatmap_svg(const HeatmapGrid& grid, std::string_view metric_label) {
    if (grid.tiles.size() != grid.mus.size())
        throw RaggedGrid("heatmap has " + std::to_string(grid.tiles.size()) + " rows for " +
                         std::to_string(grid.mus.size()) + " thresholds");
    for (const auto& row : grid.tiles)
        if (row.size() != grid.budgets.size())
            throw RaggedGrid("heatmap row length differs from the number of budgets");

    const int cols = static_cast<int>(grid.budgets.size());
    const int rows = static_cast<int>(grid.mus.size());
    const int width = svg::margin_left + cols * svg::tile_w + 20;
    const int height = svg::margin_top + rows * svg::tile_h + svg::margin_bottom;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
           "\" font-family=\"sans-serif\">\n";
    out += "<text x=\"" + std::to_string(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           svg::escape(metric_label) + "</text>\n";

    for (int r = 0; r < rows; ++r) {
        // Highest threshold on top.
        const auto& row = grid.tiles[static_cast<std::size_t>(rows - 1 - r)];
        const int y = svg::margin_top + r * svg::tile_h;
        out += "<text class=\"tick-mu\" x=\"" + std::to_string(svg::margin_left - 8) + "\" y=\"" +
               std::to_string(y + svg::tile_h / 2 + 5) + "\" text-anchor=\"end\" font-size=\"12\">" +
               svg::short_number(grid.mus[static_cast<std::size_t>(rows - 1 - r)]) + "</text>\n";
        for (int c = 0; c < cols; ++c) {
            const auto& t = row[static_cast<std::size_t>(c)];
            const int x = svg::margin_left + c * svg::tile_w;
            const int cx = x + svg::tile_w / 2;
            out += "<rect class=\"tile\" x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
                   std::to_string(svg::tile_w) + "\" height=\"" + std::to_string(svg::tile_h) + "\" fill=\"" +
                   svg::tile_colour(t.pct_mds_better) + "\" stroke=\"#ffffff\"/>\n";
            out += "<text x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(y + 22) +
                   "\" text-anchor=\"middle\" font-size=\"14\" font-weight=\"bold\">" +
                   (t.mean_delta ? svg::fixed(*t.mean_delta, 2) : std::string("-")) + "</text>\n";
            out += "<text x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(y + 42) +
                   "\" text-anchor=\"middle\" font-size=\"12\">" + std::to_string(t.significant) + " | " +
                   std::to_string(t.insignificant) + "</text>\n";
            out += "<text x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(y + 60) +
                   "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#555555\">" + std::to_string(t.failed_no_start) +
                   " | " + std::to_string(t.failed_mds_too_small) + "</text>\n";
        }
    }
    const int axis_y = svg::margin_top + rows * svg::tile_h;
    for (int c = 0; c < cols; ++c) {
        const int cx = svg::margin_left + c * svg::tile_w + svg::tile_w / 2;
        out += "<text class=\"tick-s\" x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(axis_y + 18) +
               "\" text-anchor=\"middle\" font-size=\"12\">" +
               svg::short_number(grid.budgets[static_cast<std::size_t>(c)] * 100.0) + "</text>\n";
    }
    out += "<text class=\"axis\" x=\"" + std::to_string(svg::margin_left + cols * svg::tile_w / 2) + "\" y=\"" +
           std::to_string(axis_y + 40) + "\" text-anchor=\"middle\" font-size=\"14\">s</text>\n";
    out += "<text class=\"axis\" x=\"18\" y=\"" + std::to_string(svg::margin_top + rows * svg::tile_h / 2) +
           "\" text-anchor=\"middle\" font-size=\"14\">\xce\xbc</text>\n";
    out += "</svg>\n";
    return out;
}

} // namespace mlnds

#endif // MLNDS_IO_HEATMAP_SVG_HPP_
