#include "steiner/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace steiner {

namespace {

constexpr int kW = 640;
constexpr int kH = 480;
constexpr int kMargin = 56;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(kW) + "\" height=\"" + std::to_string(kH) +
           "\" font-family=\"monospace\" font-size=\"12\">\n"
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& s,
                 const std::string& anchor = "start") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" +
           anchor + "\">" + s + "</text>\n";
}

const char* kColors[] = {"#1f6fb4", "#d1542f", "#3a9447", "#8c5bb0",
                         "#b09a2e", "#4f4f4f"};

struct LogScale {
    double lo, hi;
    explicit LogScale(std::vector<double> vals) {
        lo = std::numeric_limits<double>::max();
        hi = std::numeric_limits<double>::lowest();
        for (double v : vals) {
            if (!(v > 0.0)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo > hi) { lo = 1e-3; hi = 1.0; }
        if (lo == hi) { lo *= 0.5; hi *= 2.0; }
        lo = std::pow(10.0, std::floor(std::log10(lo)));
        hi = std::pow(10.0, std::ceil(std::log10(hi)));
    }
    double frac(double v) const {
        return (std::log10(v) - std::log10(lo)) /
               (std::log10(hi) - std::log10(lo));
    }
};

} // namespace

std::string svg_loglog(const std::vector<std::pair<double, double>>& points,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::string& title) {
    std::vector<double> xs, ys;
    for (const auto& [x, y] : points) {
        xs.push_back(x);
        ys.push_back(std::abs(y));
    }
    const LogScale sx(xs), sy(ys);
    std::string out = header();
    out += text(kW / 2.0, 20, title, "middle");
    out += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) +
           "\" width=\"" + num(kW - 2 * kMargin) + "\" height=\"" +
           num(kH - 2 * kMargin) + "\" fill=\"none\" stroke=\"black\"/>\n";
    auto px = [&](double v) {
        return kMargin + sx.frac(v) * (kW - 2 * kMargin);
    };
    auto py = [&](double v) {
        return kH - kMargin - sy.frac(v) * (kH - 2 * kMargin);
    };
    // decade ticks
    for (double d = sx.lo; d <= sx.hi * 1.0000001; d *= 10.0) {
        out += "<line x1=\"" + num(px(d)) + "\" y1=\"" + num(kH - kMargin) +
               "\" x2=\"" + num(px(d)) + "\" y2=\"" + num(kH - kMargin + 5) +
               "\" stroke=\"black\"/>\n";
        out += text(px(d), kH - kMargin + 18, num(d), "middle");
    }
    for (double d = sy.lo; d <= sy.hi * 1.0000001; d *= 10.0) {
        out += "<line x1=\"" + num(kMargin - 5) + "\" y1=\"" + num(py(d)) +
               "\" x2=\"" + num(kMargin) + "\" y2=\"" + num(py(d)) +
               "\" stroke=\"black\"/>\n";
        out += text(kMargin - 8, py(d) + 4, num(d), "end");
    }
    out += text(kW / 2.0, kH - 12, xlabel, "middle");
    out += text(14, kH / 2.0, ylabel, "middle");
    std::string poly;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(std::abs(y) > 0.0)) continue;
        poly += num(px(x)) + "," + num(py(std::abs(y))) + " ";
    }
    out += "<polyline points=\"" + poly +
           "\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\"/>\n";
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(std::abs(y) > 0.0)) continue;
        out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" +
               num(py(std::abs(y))) + "\" r=\"3\" fill=\"#d1542f\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string svg_heatmap_pair(const std::vector<double>& left,
                             const std::vector<double>& right, int rows,
                             int cols, const std::string& left_title,
                             const std::string& right_title) {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (double v : left) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : right) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (lo >= hi) hi = lo + 1.0;

    const double panel_w = (kW - 3.0 * kMargin) / 2.0;
    const double panel_h = kH - 2.0 * kMargin;
    const double cw = panel_w / cols;
    const double ch = panel_h / rows;

    auto shade = [&](double v) {
        const double f = (v - lo) / (hi - lo);
        const int r = static_cast<int>(255.0 * f + 0.5);
        const int b = static_cast<int>(255.0 * (1.0 - f) + 0.5);
        const int g = static_cast<int>(80.0 * (1.0 - std::abs(2.0 * f - 1.0)) + 0.5);
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };
    auto panel = [&](const std::vector<double>& data, double x0,
                     const std::string& ttl) {
        std::string s = text(x0 + panel_w / 2.0, kMargin - 10, ttl, "middle");
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                const double v = data[static_cast<std::size_t>(r) * cols + c];
                s += "<rect x=\"" + num(x0 + c * cw) + "\" y=\"" +
                     num(kMargin + r * ch) + "\" width=\"" + num(cw + 0.5) +
                     "\" height=\"" + num(ch + 0.5) + "\" fill=\"" + shade(v) +
                     "\"/>\n";
            }
        return s;
    };
    std::string out = header();
    out += panel(left, kMargin, left_title);
    out += panel(right, 2.0 * kMargin + panel_w, right_title);
    out += "</svg>\n";
    return out;
}

std::string svg_scatter(const std::vector<double>& x,
                        const std::vector<std::vector<double>>& series,
                        const std::vector<std::string>& names,
                        const std::string& xlabel, const std::string& title) {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    if (!x.empty()) {
        xlo = *std::min_element(x.begin(), x.end());
        xhi = *std::max_element(x.begin(), x.end());
    }
    bool any = false;
    for (const auto& s : series)
        for (double v : s) {
            if (!any) { ylo = yhi = v; any = true; }
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    if (xlo == xhi) { xlo -= 0.5; xhi += 0.5; }
    if (ylo == yhi) { ylo -= 0.5; yhi += 0.5; }

    auto px = [&](double v) {
        return kMargin + (v - xlo) / (xhi - xlo) * (kW - 2 * kMargin);
    };
    auto py = [&](double v) {
        return kH - kMargin - (v - ylo) / (yhi - ylo) * (kH - 2 * kMargin);
    };
    std::string out = header();
    out += text(kW / 2.0, 20, title, "middle");
    out += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) +
           "\" width=\"" + num(kW - 2 * kMargin) + "\" height=\"" +
           num(kH - 2 * kMargin) + "\" fill=\"none\" stroke=\"black\"/>\n";
    out += text(kW / 2.0, kH - 12, xlabel, "middle");
    out += text(kMargin, kH - kMargin + 18, num(xlo));
    out += text(kW - kMargin, kH - kMargin + 18, num(xhi), "end");
    out += text(kMargin - 8, py(ylo) + 4, num(ylo), "end");
    out += text(kMargin - 8, py(yhi) + 4, num(yhi), "end");
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % 6];
        for (std::size_t i = 0; i < series[s].size() && i < x.size(); ++i)
            out += "<circle cx=\"" + num(px(x[i])) + "\" cy=\"" +
                   num(py(series[s][i])) + "\" r=\"2.5\" fill=\"" + color +
                   "\"/>\n";
        if (s < names.size())
            out += "<text x=\"" + num(kW - kMargin - 8) + "\" y=\"" +
                   num(kMargin + 16 + 14.0 * static_cast<double>(s)) +
                   "\" text-anchor=\"end\" fill=\"" + color + "\">" +
                   names[s] + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace steiner
