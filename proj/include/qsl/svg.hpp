#pragma once

// Minimal SVG line plots and heat maps for the figure data. No external
// plotting dependency; output is deterministic text.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qsl/io.hpp"

namespace qsl::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Frame {
    double width = 640;
    double height = 420;
    double left = 70;
    double right = 170;
    double top = 40;
    double bottom = 55;
};

namespace detail {

inline std::string num(double v) { return fmt::format("{:.2f}", v); }

inline std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v)
    {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish()
    {
        if (!std::isfinite(lo)) lo = 0, hi = 1;
        if (hi - lo <= 1e-300 * std::max(1.0, std::abs(lo))) {
            const double pad = lo == 0 ? 1.0 : std::abs(lo) * 1e-3;
            lo -= pad;
            hi += pad;
        }
    }
};

inline std::string header(const Frame& f, const std::string& title)
{
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
        "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        num(f.width), num(f.height));
    s += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     num((f.left + f.width - f.right) / 2), escape(title));
    return s;
}

inline std::string axes(const Frame& f, const Range& xr, const Range& yr, const std::string& xlabel,
                        const std::string& ylabel)
{
    const double x0 = f.left, x1 = f.width - f.right, y0 = f.height - f.bottom, y1 = f.top;
    std::string s = fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                                num(x0), num(y1), num(x1 - x0), num(y0 - y1));
    for (int k = 0; k <= 4; ++k) {
        const double fx = xr.lo + (xr.hi - xr.lo) * k / 4.0;
        const double px = x0 + (x1 - x0) * k / 4.0;
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.4g}</text>\n", num(px), num(y0 + 16), fx);
        const double fy = yr.lo + (yr.hi - yr.lo) * k / 4.0;
        const double py = y0 - (y0 - y1) * k / 4.0;
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.6g}</text>\n", num(x0 - 4), num(py + 4), fy);
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num((x0 + x1) / 2),
                     num(f.height - 12), escape(xlabel));
    s += fmt::format("<text x=\"14\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">{}</text>\n",
                     num((y0 + y1) / 2), num((y0 + y1) / 2), escape(ylabel));
    return s;
}

}  // namespace detail

inline std::string line_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                             const std::string& ylabel, const Frame& f = {})
{
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
                                    "#7f7f7f", "#bcbd22", "#e377c2"};
    detail::Range xr, yr;
    for (const auto& s : series) {
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    xr.finish();
    yr.finish();
    const double x0 = f.left, x1 = f.width - f.right, y0 = f.height - f.bottom, y1 = f.top;
    const auto px = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    const auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

    std::string out = detail::header(f, title) + detail::axes(f, xr, yr, xlabel, ylabel);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = palette[k % std::size(palette)];
        std::string path;
        bool pen_down = false;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                pen_down = false;
                continue;
            }
            path += fmt::format("{}{} {} ", pen_down ? "L" : "M", detail::num(px(s.x[i])), detail::num(py(s.y[i])));
            pen_down = true;
        }
        out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path, color);
        const double ly = y1 + 14 + 16.0 * static_cast<double>(k);
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                           detail::num(x1 + 10), detail::num(ly - 4), detail::num(x1 + 30), detail::num(ly - 4), color);
        out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", detail::num(x1 + 34), detail::num(ly),
                           detail::escape(s.label));
    }
    out += "</svg>\n";
    return out;
}

/// Heat map of z over a regular (x, y) grid; z is row-major in x.
inline std::string heat_map(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& z,
                            const std::string& title, const std::string& xlabel, const std::string& ylabel,
                            const Frame& f = {})
{
    detail::Range xr, yr, zr;
    for (double v : xs) xr.include(v);
    for (double v : ys) yr.include(v);
    for (double v : z) zr.include(v);
    xr.finish();
    yr.finish();
    zr.finish();
    const double x0 = f.left, x1 = f.width - f.right, y0 = f.height - f.bottom, y1 = f.top;
    const double cw = (x1 - x0) / static_cast<double>(xs.size());
    const double ch = (y0 - y1) / static_cast<double>(ys.size());
    // Diverging map centred on zero when the data change sign.
    const double span = std::max(std::abs(zr.lo), std::abs(zr.hi));
    const auto color = [&](double v) {
        if (!std::isfinite(v)) return std::string("#cccccc");
        const double t = span > 0 ? std::clamp(v / span, -1.0, 1.0) : 0.0;
        const int r = t > 0 ? 255 : static_cast<int>(255 * (1 + t));
        const int b = t < 0 ? 255 : static_cast<int>(255 * (1 - t));
        const int g = static_cast<int>(255 * (1 - std::abs(t)));
        return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
    };
    std::string out = detail::header(f, title) + detail::axes(f, xr, yr, xlabel, ylabel);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j)
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                               detail::num(x0 + cw * static_cast<double>(i)),
                               detail::num(y0 - ch * static_cast<double>(j + 1)), detail::num(cw + 0.5),
                               detail::num(ch + 0.5), color(z[i * ys.size() + j]));
    out += fmt::format("<text x=\"{}\" y=\"{}\">max {:.4g}</text>\n", detail::num(x1 + 10), detail::num(y1 + 14), zr.hi);
    out += fmt::format("<text x=\"{}\" y=\"{}\">min {:.4g}</text>\n", detail::num(x1 + 10), detail::num(y1 + 30), zr.lo);
    out += "</svg>\n";
    return out;
}

}  // namespace qsl::svg
