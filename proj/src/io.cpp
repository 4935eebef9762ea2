#include "msreg/io.hpp"

#include "msreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace msreg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

std::vector<Sample> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EmptyInput("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput(path + " is empty");
    auto header = split_csv_line(line);
    for (auto& h : header) h = trim(h);
    const bool long_format = header.size() >= 3 && header[2] == "sample";
    if (header.size() < 2 || header[0] != "t" || header[1] != "y")
        throw BadRequest(path + ": expected header t,y or t,y,sample");

    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    std::vector<std::string> order;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < (long_format ? 3u : 2u))
            throw BadRequest(path + ":" + std::to_string(lineno) + ": short row");
        double t, y;
        try {
            t = std::stod(fields[0]);
            y = std::stod(fields[1]);
        } catch (const std::exception&) {
            throw BadRequest(path + ":" + std::to_string(lineno) + ": unparseable number");
        }
        const std::string key = long_format ? trim(fields[2]) : std::string("sample");
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back({t, y});
    }
    std::vector<Sample> samples;
    for (const auto& key : order) samples.push_back(validate_sample(groups[key], key));
    if (samples.empty()) throw EmptyInput(path + " has no data rows");
    return samples;
}

void write_fit_csv(const std::string& path, const std::vector<double>& t,
                   const std::vector<double>& values) {
    std::ofstream out(path);
    out << "t,fit\n";
    out.precision(17);
    for (std::size_t i = 0; i < t.size(); ++i) out << t[i] << "," << values[i] << "\n";
}

namespace {

struct AxisMap {
    double xmin, xmax, ymin, ymax;
    double px0, px1, py0, py1;
    double x(double v) const { return px0 + (v - xmin) / (xmax - xmin) * (px1 - px0); }
    double y(double v) const { return py0 - (v - ymin) / (ymax - ymin) * (py0 - py1); }
};

void plot_series(std::ostream& out, const AxisMap& ax, const SvgSeries& s) {
    if (s.line) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << ax.x(s.x[i]) << "," << ax.y(s.y[i]) << " ";
        out << "\"/>\n";
    } else {
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << "<circle cx=\"" << ax.x(s.x[i]) << "\" cy=\"" << ax.y(s.y[i])
                << "\" r=\"1.5\" fill=\"" << s.color << "\"/>\n";
    }
}

} // namespace

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series, int width,
                    int height, const std::string& title) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }

    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
            << title << "</text>\n";
    AxisMap ax{xmin, xmax, ymin, ymax, 50.0, width - 15.0, height - 35.0, 30.0};
    out << "<rect x=\"" << ax.px0 << "\" y=\"" << ax.py1 << "\" width=\"" << ax.px1 - ax.px0
        << "\" height=\"" << ax.py0 - ax.py1 << "\" fill=\"none\" stroke=\"#999\"/>\n";
    double ly = 45.0;
    for (const auto& s : series) {
        plot_series(out, ax, s);
        if (!s.label.empty()) {
            out << "<text x=\"" << ax.px0 + 8 << "\" y=\"" << ly << "\" font-size=\"11\" fill=\""
                << s.color << "\">" << s.label << "</text>\n";
            ly += 14.0;
        }
    }
    out << "</svg>\n";
}

void write_svg_power(const std::string& path, const std::vector<PowerPanel>& panels,
                     int panel_width, int panel_height) {
    const int cols = panels.size() > 1 ? 2 : 1;
    const int rows = (static_cast<int>(panels.size()) + cols - 1) / cols;
    const int width = cols * panel_width;
    const int height = rows * panel_height;
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double ox = static_cast<double>(p % cols) * panel_width;
        const double oy = static_cast<double>(p / cols) * panel_height;
        double xmin = 1e300, xmax = -1e300;
        for (double e : panel.etas) {
            xmin = std::min(xmin, e);
            xmax = std::max(xmax, e);
        }
        if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
        AxisMap ax{xmin, xmax, 0.0, 1.0,
                   ox + 45.0, ox + panel_width - 15.0, oy + panel_height - 30.0, oy + 30.0};
        out << "<text x=\"" << ox + panel_width / 2.0 << "\" y=\"" << oy + 18
            << "\" text-anchor=\"middle\" font-size=\"13\">" << panel.title << "</text>\n";
        out << "<rect x=\"" << ax.px0 << "\" y=\"" << ax.py1 << "\" width=\"" << ax.px1 - ax.px0
            << "\" height=\"" << ax.py0 - ax.py1 << "\" fill=\"none\" stroke=\"#999\"/>\n";
        double ly = oy + 44.0;
        for (std::size_t c = 0; c < panel.curves.size(); ++c) {
            SvgSeries s;
            s.x = panel.etas;
            s.y = panel.curves[c].second;
            s.color = kColors[c % 5];
            s.line = true;
            plot_series(out, ax, s);
            out << "<text x=\"" << ax.px0 + 8 << "\" y=\"" << ly << "\" font-size=\"11\" fill=\""
                << s.color << "\">" << panel.curves[c].first << "</text>\n";
            ly += 13.0;
        }
    }
    out << "</svg>\n";
}

} // namespace msreg
