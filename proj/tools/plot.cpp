#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gsqg::cli {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::string& title, const std::string& xlabel,
                         const std::vector<double>& xs, const std::vector<double>& ys) {
    constexpr double W = 640, H = 400, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (std::size_t k = 0; k < xs.size() && k < ys.size(); ++k) {
        if (!std::isfinite(xs[k]) || !std::isfinite(ys[k])) continue;
        x0 = std::min(x0, xs[k]);
        x1 = std::max(x1, xs[k]);
        y0 = std::min(y0, ys[k]);
        y1 = std::max(y1, ys[k]);
    }
    const bool empty = !std::isfinite(x0);
    if (empty) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) {
        const double pad = y0 == 0.0 ? 1.0 : 0.05 * std::fabs(y0);
        y0 -= pad;
        y1 += pad;
    }
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << escape(title) << "</text>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x0 + k * (x1 - x0) / 4, fy = y0 + k * (y1 - y0) / 4;
        out << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx) << "</text>\n"
            << "<text x=\"" << ml - 6 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy) << "</text>\n";
    }
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(xlabel) << "</text>\n";
    if (empty) {
        out << "<text x=\"" << W / 2 << "\" y=\"" << H / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">no data</text>\n";
    }
    std::string d;
    bool pen = false;
    for (std::size_t k = 0; k < xs.size() && k < ys.size(); ++k) {
        if (!std::isfinite(xs[k]) || !std::isfinite(ys[k])) {
            pen = false;
            continue;
        }
        d += (pen ? " L " : " M ") + num(px(xs[k])) + " " + num(py(ys[k]));
        pen = true;
    }
    if (!d.empty()) out << "<path d=\"" << d << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    out << "</svg>\n";
}

}  // namespace gsqg::cli
