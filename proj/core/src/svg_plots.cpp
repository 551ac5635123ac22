#include "ccn/svg_plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ccn/errors.hpp"

namespace ccn {

namespace {

constexpr double kPanelW = 260.0;
constexpr double kPanelH = 180.0;
constexpr double kMargin = 40.0;

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(4);
    ss << x;
    return ss.str();
}

void save(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << body;
}

// Maps a p-value in [0, 1] to panel y (top = 1).
double y_of(double p, double top) { return top + kPanelH * (1.0 - std::clamp(p, 0.0, 1.0)); }

void box(std::ostringstream& svg, const BoxStats& b, double cx, double top, const char* colour) {
    if (b.count == 0) return;
    const double half = 7.0;
    svg << "<line x1='" << cx << "' x2='" << cx << "' y1='" << y_of(b.whisker_hi, top) << "' y2='"
        << y_of(b.whisker_lo, top) << "' stroke='" << colour << "'/>\n";
    svg << "<rect x='" << cx - half << "' y='" << y_of(b.q3, top) << "' width='" << 2 * half << "' height='"
        << std::max(0.5, y_of(b.q1, top) - y_of(b.q3, top)) << "' fill='" << colour
        << "' fill-opacity='0.35' stroke='" << colour << "'/>\n";
    svg << "<line x1='" << cx - half << "' x2='" << cx + half << "' y1='" << y_of(b.q2, top) << "' y2='"
        << y_of(b.q2, top) << "' stroke='black'/>\n";
}

}  // namespace

std::vector<std::filesystem::path> write_box_plot_panels(const ExperimentConfig& config,
                                                         const ExperimentSummary& summary,
                                                         const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> written;
    const auto rows = config.n_grid.size();
    const auto cols = config.delta_grid.size();
    const auto ks = config.k_grid.size();
    const double width = kMargin + static_cast<double>(cols) * (kPanelW + kMargin);
    const double height = kMargin + static_cast<double>(rows) * (kPanelH + kMargin);

    for (std::size_t g = 0; g < config.noise_gaps.size(); ++g) {
        const auto& noise = config.noise_gaps[g];
        std::ostringstream svg;
        svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
            << "' font-family='sans-serif' font-size='10'>\n";
        svg << "<text x='" << kMargin << "' y='14'>|beta - alpha| = " << fmt(std::fabs(noise.beta - noise.alpha))
            << " (alpha=" << fmt(noise.alpha) << ", beta=" << fmt(noise.beta)
            << "); green: clean fit, purple: noisy fit</text>\n";
        for (const auto& cell : summary.cells) {
            const auto& c = cell.coord;
            if (c.noise_index != g) continue;
            const double left = kMargin + static_cast<double>(c.delta_index) * (kPanelW + kMargin);
            const double top = kMargin + static_cast<double>(c.n_index) * (kPanelH + kMargin);
            if (c.k_index == 0) {
                svg << "<rect x='" << left << "' y='" << top << "' width='" << kPanelW << "' height='" << kPanelH
                    << "' fill='none' stroke='#888'/>\n";
                svg << "<text x='" << left << "' y='" << top - 4 << "'>N=" << c.n << ", delta=" << fmt(c.delta)
                    << "</text>\n";
                for (auto [level, colour] : {std::pair{0.10, "red"}, std::pair{0.05, "blue"}}) {
                    svg << "<line x1='" << left << "' x2='" << left + kPanelW << "' y1='" << y_of(level, top)
                        << "' y2='" << y_of(level, top) << "' stroke='" << colour
                        << "' stroke-dasharray='4 3'/>\n";
                }
            }
            const double slot = kPanelW / static_cast<double>(ks);
            const double centre = left + slot * (static_cast<double>(c.k_index) + 0.5);
            box(svg, cell.clean_p, centre - 8.0, top, "green");
            box(svg, cell.noisy_p, centre + 8.0, top, "purple");
            svg << "<text x='" << centre - 6 << "' y='" << top + kPanelH + 12 << "'>" << c.k << "</text>\n";
        }
        svg << "</svg>\n";
        const auto path = dir / ("boxplots_noise" + std::to_string(g) + ".svg");
        save(path, svg.str());
        written.push_back(path);
    }
    return written;
}

void write_power_curve_svg(const std::vector<PowerCurvePoint>& points, const std::filesystem::path& path) {
    const double w = 480.0;
    const double h = 320.0;
    const double left = 50.0;
    const double top = 20.0;
    const double pw = w - left - 110.0;
    const double ph = h - top - 40.0;
    double max_gap = 0.0;
    for (const auto& p : points) max_gap = std::max(max_gap, p.gap);
    if (max_gap == 0.0) max_gap = 1.0;

    std::map<long, std::vector<PowerCurvePoint>> by_k;
    for (const auto& p : points) by_k[p.k].push_back(p);

    static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"};
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "' font-family='sans-serif' font-size='11'>\n";
    svg << "<rect x='" << left << "' y='" << top << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='#888'/>\n";
    svg << "<text x='" << left + pw / 2 - 30 << "' y='" << h - 8 << "'>beta - alpha</text>\n";
    svg << "<text x='6' y='" << top + 10 << "'>power</text>\n";
    std::size_t idx = 0;
    for (const auto& [k, pts] : by_k) {
        const char* colour = palette[idx % std::size(palette)];
        svg << "<polyline fill='none' stroke='" << colour << "' points='";
        for (const auto& p : pts) {
            svg << left + pw * p.gap / max_gap << ',' << top + ph * (1.0 - p.power) << ' ';
        }
        svg << "'/>\n";
        svg << "<text x='" << left + pw + 10 << "' y='" << top + 14 + 14 * static_cast<double>(idx) << "' fill='"
            << colour << "'>k=" << k << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    save(path, svg.str());
}

}  // namespace ccn
