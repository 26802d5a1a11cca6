#include "knnlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace knnlab {

namespace {

std::size_t column_index(const CsvTable& t, const std::string& name) {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw std::invalid_argument("CSV has no column named '" + name + "'");
    return static_cast<std::size_t>(it - t.header.begin());
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

std::string render_svg_chart(const CsvTable& table, const std::string& x_column,
                             const std::string& y_column) {
    if (table.rows.empty()) throw std::invalid_argument("CSV has no data rows to plot");
    const std::size_t xi = column_index(table, x_column);
    const std::size_t yi = column_index(table, y_column);

    std::vector<std::pair<double, double>> pts;
    pts.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        pts.emplace_back(std::stod(row.at(xi)), std::stod(row.at(yi)));
    }
    std::sort(pts.begin(), pts.end());

    double xmin = pts.front().first, xmax = pts.back().first;
    double ymin = pts.front().second, ymax = pts.front().second;
    for (const auto& [x, y] : pts) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    constexpr double W = 640, H = 420, ML = 70, MR = 20, MT = 20, MB = 50;
    const auto sx = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    const auto sy = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
       << H - MB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"14\">" << x_column << "</text>\n";
    os << "<text x=\"16\" y=\"" << (MT + H - MB) / 2
       << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
       << (MT + H - MB) / 2 << ")\">" << y_column << "</text>\n";
    os << "<text x=\"" << ML << "\" y=\"" << H - MB + 18 << "\" font-size=\"11\">" << fmt(xmin)
       << "</text>\n";
    os << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 18
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(xmax) << "</text>\n";
    os << "<text x=\"" << ML - 6 << "\" y=\"" << H - MB << "\" text-anchor=\"end\" font-size=\"11\">"
       << fmt(ymin) << "</text>\n";
    os << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 10
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(ymax) << "</text>\n";

    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << fmt(sx(pts[i].first)) << ',' << fmt(sy(pts[i].second));
    }
    os << "\"/>\n";
    for (const auto& [x, y] : pts) {
        os << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
           << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace knnlab
