#include "stresskit/svg.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace stresskit {

namespace {

constexpr const char* kXAxisLabel = "External stress (1/Mod-MMSE)";
constexpr const char* kYAxisLabel = "Performance (Mod-MSE)";

struct Rgb {
    int r, g, b;
};

constexpr Rgb kPalette[] = {
    {31, 119, 180}, {44, 160, 44},  {214, 39, 40},  {148, 103, 189},
    {140, 86, 75},  {227, 119, 194}, {96, 99, 106},  {188, 189, 34},
};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

/// Shade between a light tint of the hue (t = 0) and the full hue (t = 1).
std::string shade(const Rgb& hue, double t) {
    const double mix = 0.15 + 0.85 * std::clamp(t, 0.0, 1.0);
    const auto channel = [mix](int c) {
        return static_cast<int>(std::lround(240.0 + (static_cast<double>(c) - 240.0) * mix));
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(hue.r), channel(hue.g), channel(hue.b));
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct PlotSeries {
    std::string label;
    const std::vector<PathPoint>* points;
    std::size_t hue;
};

std::string render(const std::vector<PlotSeries>& series, const SvgStyle& style) {
    bool any = false;
    double a_lo = std::numeric_limits<double>::infinity();
    double a_hi = -a_lo, p_lo = a_lo, p_hi = -a_lo;
    for (const PlotSeries& s : series) {
        for (const PathPoint& pt : *s.points) {
            any = true;
            a_lo = std::min(a_lo, pt.arousal);
            a_hi = std::max(a_hi, pt.arousal);
            p_lo = std::min(p_lo, pt.performance);
            p_hi = std::max(p_hi, pt.performance);
        }
    }
    if (!any)
        throw Error("nothing to draw: all inputs are empty");
    // Degenerate spans widen to a unit box so single points stay visible.
    if (a_hi <= a_lo) {
        a_lo -= 0.5;
        a_hi += 0.5;
    }
    if (p_hi <= p_lo) {
        p_lo -= 0.5;
        p_hi += 0.5;
    }
    const double a_pad = 0.04 * (a_hi - a_lo);
    const double p_pad = 0.04 * (p_hi - p_lo);
    a_lo -= a_pad;
    a_hi += a_pad;
    p_lo -= p_pad;
    p_hi += p_pad;

    const double m = style.margin;
    const double w = style.width;
    const double h = style.height;
    const double plot_w = w - 2.0 * m;
    const double plot_h = h - 2.0 * m;
    const auto sx = [&](double a) { return m + (a - a_lo) / (a_hi - a_lo) * plot_w; };
    const auto sy = [&](double p) { return h - m - (p - p_lo) / (p_hi - p_lo) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) +
           "\" height=\"" + std::to_string(style.height) + "\" viewBox=\"0 0 " +
           std::to_string(style.width) + " " + std::to_string(style.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty())
        svg += "<text x=\"" + num(w / 2) + "\" y=\"" + num(m / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
               xml_escape(style.title) + "</text>\n";

    // Frame and ticks.
    svg += "<rect x=\"" + num(m) + "\" y=\"" + num(m) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double fa = a_lo + (a_hi - a_lo) * t / ticks;
        const double fp = p_lo + (p_hi - p_lo) * t / ticks;
        const double x = sx(fa);
        const double y = sy(fp);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(h - m) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(h - m + 5) + "\" stroke=\"#444444\"/>\n";
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(h - m + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(fa) + "</text>\n";
        svg += "<line x1=\"" + num(m - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(m) + "\" y2=\"" +
               num(y) + "\" stroke=\"#444444\"/>\n";
        svg += "<text x=\"" + num(m - 8) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(fp) + "</text>\n";
    }
    svg += "<text x=\"" + num(w / 2) + "\" y=\"" + num(h - m / 4) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           std::string(kXAxisLabel) + "</text>\n";
    svg += "<text x=\"" + num(m / 3) + "\" y=\"" + num(h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 " +
           num(m / 3) + " " + num(h / 2) + ")\">" + std::string(kYAxisLabel) + "</text>\n";

    // One polyline per series, then per-point markers shaded light to dark.
    for (const PlotSeries& s : series) {
        const Rgb hue = kPalette[s.hue % kPaletteSize];
        const std::size_t n = s.points->size();
        svg += "<polyline fill=\"none\" stroke=\"" + shade(hue, 0.6) + "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            const PathPoint& pt = (*s.points)[i];
            if (i)
                svg += ' ';
            svg += num(sx(pt.arousal)) + "," + num(sy(pt.performance));
        }
        svg += "\"/>\n";
        for (std::size_t i = 0; i < n; ++i) {
            const PathPoint& pt = (*s.points)[i];
            const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
            svg += "<circle cx=\"" + num(sx(pt.arousal)) + "\" cy=\"" + num(sy(pt.performance)) +
                   "\" r=\"2.60\" fill=\"" + shade(hue, t) + "\"/>\n";
        }
        if (!s.label.empty()) {
            const PathPoint& last = s.points->back();
            svg += "<text x=\"" + num(sx(last.arousal) + 6) + "\" y=\"" + num(sy(last.performance)) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + shade(hue, 1.0) + "\">" +
                   xml_escape(s.label) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace

std::string emit_svg(const std::vector<CatastrophePath>& paths, const SvgStyle& style) {
    if (paths.empty())
        throw Error("nothing to draw: no paths");
    std::vector<PlotSeries> series;
    series.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i)
        series.push_back({paths[i].asset_id, &paths[i].points, i});
    return render(series, style);
}

std::string emit_svg(const std::vector<CrisisSegment>& segments, const SvgStyle& style) {
    if (segments.empty())
        throw Error("nothing to draw: no segments");
    std::vector<PlotSeries> series;
    series.reserve(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i)
        series.push_back({segments[i].label, &segments[i].points, i});
    return render(series, style);
}

} // namespace stresskit
