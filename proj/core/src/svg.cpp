#include "quantset/svg.hpp"

#include "quantset/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace quantset::svg {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 400;
constexpr int kMargin = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string gnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string line_chart(const std::string& title, const std::vector<LineSeries>& series) {
    if (series.empty()) throw input_error("line_chart: no series");
    std::size_t n = 0;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const LineSeries& s : series) {
        n = std::max(n, s.y.size());
        for (double v : s.y) {
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (n < 2) throw input_error("line_chart: need at least two points");
    if (hi <= lo) {
        hi = lo + 1.0;
        lo -= 1.0;
    }

    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin;
    auto sx = [&](std::size_t i, std::size_t len) {
        return kMargin + plot_w * static_cast<double>(i) / static_cast<double>(len - 1);
    };
    auto sy = [&](double v) { return kMargin + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">" << title << "</text>\n";
    // axes
    os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
       << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
       << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // y range labels
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << gnum(hi)
       << "</text>\n";
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << gnum(lo)
       << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const LineSeries& ls = series[s];
        if (ls.y.size() < 2) continue;
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 6]
           << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < ls.y.size(); ++i) {
            if (i) os << ' ';
            os << num(sx(i, ls.y.size())) << ',' << num(sy(ls.y[i]));
        }
        os << "\"/>\n";
        os << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 14 * (s + 1)
           << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kPalette[s % 6] << "\">"
           << ls.name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace quantset::svg
