#include "fpsum/svg.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace fpsum {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string num2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;  // (n, log10 value)
};

}  // namespace

std::string render_chart_svg(const std::vector<ResultRow>& rows, const std::string& title) {
    // Chart geometry: fixed 800x500 canvas, linear n on x, log10 on y.
    constexpr double W = 800, H = 500, L = 70, R = 780, T = 40, B = 450;

    std::vector<Series> series;
    auto series_for = [&](const std::string& label) -> Series& {
        for (Series& s : series)
            if (s.label == label) return s;
        series.push_back(Series{label, {}});
        return series.back();
    };
    for (const ResultRow& r : rows) {
        if (r.rel_error_defined && !r.rel_error.is_zero()) {
            double v = std::log10(std::fabs(r.rel_error.to_double()));
            if (std::isfinite(v))
                series_for(r.algorithm).pts.emplace_back(static_cast<double>(r.n), v);
        }
        if (r.bound_defined && !r.bound_value.is_zero()) {
            double v = std::log10(std::fabs(r.bound_value.to_double()));
            if (std::isfinite(v))
                series_for(r.bound_id).pts.emplace_back(static_cast<double>(r.n), v);
        }
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num2(W) + "\" height=\"" +
           num2(H) + "\" viewBox=\"0 0 " + num2(W) + " " + num2(H) + "\">\n";
    svg += "<rect width=\"" + num2(W) + "\" height=\"" + num2(H) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num2(W / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           title + "</text>\n";

    bool any = false;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const Series& s : series)
        for (const auto& [px, py] : s.pts) {
            if (!any) {
                xmin = xmax = px;
                ymin = ymax = py;
                any = true;
            } else {
                xmin = std::min(xmin, px);
                xmax = std::max(xmax, px);
                ymin = std::min(ymin, py);
                ymax = std::max(ymax, py);
            }
        }
    if (!any) {
        svg += "<text x=\"" + num2(W / 2) + "\" y=\"" + num2(H / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">no "
               "data</text>\n</svg>\n";
        return svg;
    }
    if (xmax == xmin) {
        xmin -= 1;
        xmax += 1;
    }
    if (ymax == ymin) {
        ymin -= 1;
        ymax += 1;
    }
    auto px_of = [&](double n) { return L + (n - xmin) / (xmax - xmin) * (R - L); };
    auto py_of = [&](double v) { return B - (v - ymin) / (ymax - ymin) * (B - T); };

    // Axes.
    svg += "<line x1=\"" + num2(L) + "\" y1=\"" + num2(B) + "\" x2=\"" + num2(R) + "\" y2=\"" +
           num2(B) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num2(L) + "\" y1=\"" + num2(T) + "\" x2=\"" + num2(L) + "\" y2=\"" +
           num2(B) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num2((L + R) / 2) + "\" y=\"" + num2(B + 36) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">n</text>\n";
    svg += "<text x=\"16\" y=\"" + num2((T + B) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           num2((T + B) / 2) + ")\">log10(value)</text>\n";

    // X ticks: five stops across the range, integer labels.
    for (int i = 0; i <= 4; ++i) {
        double n = xmin + (xmax - xmin) * i / 4.0;
        double px = px_of(n);
        svg += "<line x1=\"" + num2(px) + "\" y1=\"" + num2(B) + "\" x2=\"" + num2(px) +
               "\" y2=\"" + num2(B + 5) + "\" stroke=\"black\"/>\n";
        char lbl[32];
        std::snprintf(lbl, sizeof lbl, "%.0f", n);
        svg += "<text x=\"" + num2(px) + "\" y=\"" + num2(B + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + lbl +
               "</text>\n";
    }
    // Y ticks: integer powers of ten, thinned to at most ~12 labels.
    {
        int lo = static_cast<int>(std::ceil(ymin));
        int hi = static_cast<int>(std::floor(ymax));
        int step = 1;
        if (hi >= lo) step = std::max(1, (hi - lo) / 10 + ((hi - lo) % 10 ? 1 : 0));
        for (int v = lo; v <= hi; v += step) {
            double py = py_of(v);
            svg += "<line x1=\"" + num2(L - 5) + "\" y1=\"" + num2(py) + "\" x2=\"" + num2(L) +
                   "\" y2=\"" + num2(py) + "\" stroke=\"black\"/>\n";
            svg += "<text x=\"" + num2(L - 9) + "\" y=\"" + num2(py + 4) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   std::to_string(v) + "</text>\n";
        }
    }

    // Series polylines plus point markers, palette in first-appearance order.
    for (size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        if (s.pts.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (size_t i = 0; i < s.pts.size(); ++i) {
                if (i) svg += ' ';
                svg += num2(px_of(s.pts[i].first)) + "," + num2(py_of(s.pts[i].second));
            }
            svg += "\"/>\n";
        }
        for (const auto& [pn, pv] : s.pts) {
            svg += "<circle cx=\"" + num2(px_of(pn)) + "\" cy=\"" + num2(py_of(pv)) +
                   "\" r=\"2\" fill=\"";
            svg += color;
            svg += "\"/>\n";
        }
    }

    // Legend, top right.
    for (size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % kPaletteSize];
        double ly = T + 10 + 16 * static_cast<double>(si);
        svg += "<line x1=\"" + num2(R - 170) + "\" y1=\"" + num2(ly) + "\" x2=\"" +
               num2(R - 146) + "\" y2=\"" + num2(ly) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num2(R - 140) + "\" y=\"" + num2(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + series[si].label +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace fpsum
