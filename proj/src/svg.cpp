#include "epm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace epm::svg {

namespace {

constexpr double kPanelW = 420;
constexpr double kPanelH = 320;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 36;
constexpr double kBottom = 50;

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0;
            hi = 1;
        }
        if (hi - lo <= 0) {
            const double pad = lo == 0 ? 1.0 : std::abs(lo) * 0.05;
            lo -= pad;
            hi += pad;
        }
    }
};

void draw_panel(std::string &out, const Panel &p, double ox) {
    Range xr, yr;
    for (const auto &s : p.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                xr.add(s.x[i]);
                yr.add(s.y[i]);
            }
        }
    }
    xr.finish();
    yr.finish();
    const double pw = kPanelW - kLeft - kRight;
    const double ph = kPanelH - kTop - kBottom;
    auto sx = [&](double x) { return ox + kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    out += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#333"/>)"
                       "\n",
                       ox + kLeft, kTop, pw, ph);
    out += fmt::format(R"(<text x="{:.2f}" y="20" text-anchor="middle" font-size="14">{}</text>)"
                       "\n",
                       ox + kPanelW / 2, escape(p.title));
    out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="12">{}</text>)"
                       "\n",
                       ox + kLeft + pw / 2, kPanelH - 10, escape(p.x_label));
    out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="12" )"
                       R"svg(transform="rotate(-90 {:.2f} {:.2f})">{}</text>)svg"
                       "\n",
                       ox + 16, kTop + ph / 2, ox + 16, kTop + ph / 2, escape(p.y_label));
    for (int k = 0; k <= 4; ++k) {
        const double xv = xr.lo + (xr.hi - xr.lo) * k / 4;
        const double yv = yr.lo + (yr.hi - yr.lo) * k / 4;
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="10">{:.3g}</text>)"
                           "\n",
                           sx(xv), kTop + ph + 14, xv);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="end" font-size="10">{:.3g}</text>)"
                           "\n",
                           ox + kLeft - 4, sy(yv) + 3, yv);
    }

    for (std::size_t si = 0; si < p.series.size(); ++si) {
        const auto &s = p.series[si];
        const char *color = kPalette[si % std::size(kPalette)];
        std::string pts;
        auto flush = [&] {
            if (!pts.empty()) {
                out += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)"
                                   "\n",
                                   color, pts);
                pts.clear();
            }
        };
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            if (!pts.empty()) {
                pts += ' ';
            }
            pts += fmt::format("{:.2f},{:.2f}", sx(s.x[i]), sy(s.y[i]));
        }
        flush();
        const double ly = kTop + 12 + 14 * static_cast<double>(si);
        out += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="2"/>)"
                           "\n",
                           ox + kPanelW - kRight - 90, ly, ox + kPanelW - kRight - 74, ly, color);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="10">{}</text>)"
                           "\n",
                           ox + kPanelW - kRight - 70, ly + 3, escape(s.label));
    }
}

} // namespace

std::string render(std::span<const Panel> panels) {
    const double width = kPanelW * static_cast<double>(std::max<std::size_t>(1, panels.size()));
    std::string out = fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" )"
                                  R"(viewBox="0 0 {:.0f} {:.0f}" font-family="sans-serif">)"
                                  "\n",
                                  width, kPanelH, width, kPanelH);
    out += fmt::format(R"(<rect width="{:.0f}" height="{:.0f}" fill="white"/>)"
                       "\n",
                       width, kPanelH);
    for (std::size_t i = 0; i < panels.size(); ++i) {
        draw_panel(out, panels[i], kPanelW * static_cast<double>(i));
    }
    out += "</svg>\n";
    return out;
}

} // namespace epm::svg
