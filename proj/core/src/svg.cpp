// Minimal SVG plotting for sweep results: line plots for scans, heatmaps for
// maps, and the Bloch x-z disc for both.

#include "aqrm/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace aqrm {

namespace fs = std::filesystem;

namespace {

constexpr double kW = 640, kH = 440, kL = 70, kR = 20, kT = 30, kB = 50;

using Field = std::function<std::optional<double>(const ResultRecord&)>;

struct Series {
    std::string name;
    Field get;
};

const std::vector<Series>& series() {
    static const std::vector<Series> s = {
        {"energy", [](const ResultRecord& r) { return std::optional<double>(r.energy); }},
        {"mana", [](const ResultRecord& r) { return r.mana; }},
        {"mana_bos", [](const ResultRecord& r) { return r.mana_bos; }},
        {"entropy", [](const ResultRecord& r) { return r.entropy; }},
        {"dai_fu_luo", [](const ResultRecord& r) { return r.dai_fu_luo; }},
    };
    return s;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

std::string colour(int i) {
    static const std::array<const char*, 8> c = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
    return c[static_cast<std::size_t>(i) % c.size()];
}

// Dark blue -> teal -> yellow.
std::string heat(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const std::array<std::array<double, 3>, 3> stops = {{{68, 1, 84}, {33, 145, 140}, {253, 231, 37}}};
    const double s = t * 2.0;
    const int k = std::min(1, static_cast<int>(s));
    const double f = s - k;
    std::ostringstream os;
    os << "rgb(";
    for (int c = 0; c < 3; ++c) {
        os << static_cast<int>(std::lround(stops[k][c] + f * (stops[k + 1][c] - stops[k][c])))
           << (c < 2 ? "," : ")");
    }
    return os.str();
}

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); }
    double py(double y) const { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); }
};

std::string header(const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kW / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n";
    return os.str();
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    std::ostringstream os;
    os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
       << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
        os << "<text x=\"" << f.px(x) << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">"
           << num(x) << "</text>\n";
        os << "<text x=\"" << kL - 6 << "\" y=\"" << f.py(y) + 4 << "\" text-anchor=\"end\">" << num(y)
           << "</text>\n";
    }
    os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">"
       << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << (kT + kH - kB) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (kT + kH - kB) / 2 << ")\">" << ylabel << "</text>\n";
    return os.str();
}

void save(const fs::path& p, const std::string& body, std::vector<fs::path>& out) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << body << "</svg>\n";
    out.push_back(p);
}

void padded(double& lo, double& hi) {
    if (!(lo < hi)) {
        lo -= 0.5;
        hi += 0.5;
    } else {
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
}

void line_plots(const ResultTable& t, const SweepConfig& c, const fs::path& dir,
                const std::string& base, std::vector<fs::path>& out) {
    const SweepAxis& ax = c.axes.front();
    for (const Series& s : series()) {
        std::map<int, std::vector<std::pair<double, double>>> lines;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const ResultRecord& r : t.rows) {
            const auto v = s.get(r);
            if (!v) continue;
            const double x = c.point_coordinates(r.point)[0];
            lines[r.state].emplace_back(x, *v);
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
        if (lines.empty()) continue;
        padded(lo, hi);
        Frame f{ax.min, ax.max, lo, hi};
        if (!(f.x0 < f.x1)) std::swap(f.x0, f.x1);
        std::string body = header(s.name + " vs " + std::string(to_string(ax.name)));
        body += axes(f, std::string(to_string(ax.name)), s.name);
        for (const auto& [state, pts] : lines) {
            std::ostringstream os;
            os << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << colour(state)
               << "\" points=\"";
            for (const auto& [x, y] : pts) os << f.px(x) << ',' << f.py(y) << ' ';
            os << "\"/>\n";
            body += os.str();
        }
        save(dir / (base + "_" + s.name + ".svg"), body, out);
    }
}

void heatmaps(const ResultTable& t, const SweepConfig& c, const fs::path& dir,
              const std::string& base, std::vector<fs::path>& out) {
    const SweepAxis& ax = c.axes[0];
    const SweepAxis& ay = c.axes[1];
    std::map<int, std::vector<const ResultRecord*>> by_state;
    for (const ResultRecord& r : t.rows) by_state[r.state].push_back(&r);

    for (const Series& s : series()) {
        for (const auto& [state, rows] : by_state) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const ResultRecord* r : rows) {
                if (const auto v = s.get(*r)) {
                    lo = std::min(lo, *v);
                    hi = std::max(hi, *v);
                }
            }
            if (!(lo <= hi)) continue;
            const double dx = (ax.max - ax.min) / (ax.count - 1);
            const double dy = (ay.max - ay.min) / (ay.count - 1);
            Frame f{ax.min - dx / 2, ax.max + dx / 2, ay.min - dy / 2, ay.max + dy / 2};
            std::string body = header(s.name + ", state " + std::to_string(state) + " [" + num(lo) +
                                      ", " + num(hi) + "]");
            std::ostringstream os;
            for (const ResultRecord* r : rows) {
                const auto xy = c.point_coordinates(r->point);
                const auto v = s.get(*r);
                const double x0 = f.px(xy[0] - dx / 2), x1 = f.px(xy[0] + dx / 2);
                const double y0 = f.py(xy[1] + dy / 2), y1 = f.py(xy[1] - dy / 2);
                os << "<rect x=\"" << std::min(x0, x1) << "\" y=\"" << std::min(y0, y1)
                   << "\" width=\"" << std::abs(x1 - x0) + 0.3 << "\" height=\"" << std::abs(y1 - y0) + 0.3
                   << "\" fill=\""
                   << (v ? heat(hi > lo ? (*v - lo) / (hi - lo) : 0.5) : std::string("#cccccc"))
                   << "\"/>\n";
            }
            body += os.str();
            body += axes(f, std::string(to_string(ax.name)), std::string(to_string(ay.name)));
            save(dir / (base + "_" + s.name + "_state" + std::to_string(state) + ".svg"), body, out);
        }
    }
}

void bloch_disc(const ResultTable& t, const fs::path& dir, const std::string& base,
                std::vector<fs::path>& out) {
    Frame f{-1.1, 1.1, -1.1, 1.1};
    std::string body = header("Bloch vectors, x-z plane");
    body += axes(f, "s_x", "s_z");
    std::ostringstream os;
    os << "<ellipse cx=\"" << f.px(0) << "\" cy=\"" << f.py(0) << "\" rx=\"" << f.px(1) - f.px(0)
       << "\" ry=\"" << f.py(0) - f.py(1) << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (const ResultRecord& r : t.rows) {
        if (!r.s_x || !r.s_z) continue;
        os << "<circle r=\"2\" cx=\"" << f.px(*r.s_x) << "\" cy=\"" << f.py(*r.s_z) << "\" fill=\""
           << colour(r.state) << "\" fill-opacity=\"0.7\"/>\n";
    }
    body += os.str();
    save(dir / (base + "_bloch_xz.svg"), body, out);
}

}  // namespace

std::vector<fs::path> write_plots(const ResultTable& table, const SweepConfig& config,
                                  const fs::path& dir) {
    std::vector<fs::path> out;
    const std::string& base = config.output.basename;
    if (config.mode == SweepMode::SpectrumScan) {
        line_plots(table, config, dir, base, out);
    } else {
        heatmaps(table, config, dir, base, out);
    }
    bloch_disc(table, dir, base, out);
    return out;
}

}  // namespace aqrm
