#include "ergm/svg.hpp"

#include <cmath>
#include <cstdio>

#include "ergm/rng.hpp"

namespace ergm {

std::vector<std::pair<double, double>> force_layout(const Network& net, std::uint64_t seed,
                                                    int iterations) {
    const int n = net.node_count();
    Rng rng(seed);
    std::vector<std::pair<double, double>> pos(n);
    for (auto& p : pos) p = {rng.next_unit(), rng.next_unit()};
    if (n == 1) {
        pos[0] = {0.5, 0.5};
        return pos;
    }

    const double k = std::sqrt(1.0 / n);
    double temp = 0.1;
    const double cool = std::pow(1e-3 / temp, 1.0 / std::max(1, iterations));
    std::vector<std::pair<double, double>> disp(n);

    for (int it = 0; it < iterations; ++it) {
        for (auto& d : disp) d = {0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double dx = pos[i].first - pos[j].first;
                double dy = pos[i].second - pos[j].second;
                double dist = std::sqrt(dx * dx + dy * dy);
                if (dist < 1e-9) {
                    // nudge coincident nodes apart along a seed-derived direction
                    dx = 1e-4 * (1.0 + (i % 7));
                    dy = 1e-4 * (1.0 + (j % 5));
                    dist = std::sqrt(dx * dx + dy * dy);
                }
                const double rep = k * k / dist;
                disp[i].first += dx / dist * rep;
                disp[i].second += dy / dist * rep;
                disp[j].first -= dx / dist * rep;
                disp[j].second -= dy / dist * rep;
                if (net.has_edge(i, j)) {
                    const double att = dist * dist / k;
                    disp[i].first -= dx / dist * att;
                    disp[i].second -= dy / dist * att;
                    disp[j].first += dx / dist * att;
                    disp[j].second += dy / dist * att;
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            const double len = std::sqrt(disp[i].first * disp[i].first +
                                         disp[i].second * disp[i].second);
            if (len > 1e-12) {
                const double step = std::min(len, temp);
                pos[i].first += disp[i].first / len * step;
                pos[i].second += disp[i].second / len * step;
            }
            pos[i].first = std::min(1.0, std::max(0.0, pos[i].first));
            pos[i].second = std::min(1.0, std::max(0.0, pos[i].second));
        }
        temp *= cool;
    }

    // normalize into the unit square with a small margin
    double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (const auto& p : pos) {
        xmin = std::min(xmin, p.first);
        xmax = std::max(xmax, p.first);
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    }
    const double xr = std::max(1e-9, xmax - xmin), yr = std::max(1e-9, ymax - ymin);
    for (auto& p : pos) {
        p.first = 0.06 + 0.88 * (p.first - xmin) / xr;
        p.second = 0.06 + 0.88 * (p.second - ymin) / yr;
    }
    return pos;
}

namespace {

void append_panel(std::string& svg, const Network& net, const std::string& title,
                  double ox, double oy, double side, std::uint64_t seed) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                  "fill=\"white\" stroke=\"#444\"/>\n",
                  ox, oy, side, side);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"12\">%s</text>\n",
                  ox + 6.0, oy + 16.0, title.c_str());
    svg += buf;

    const auto pos = force_layout(net, seed);
    auto px = [&](int v) { return ox + pos[v].first * side; };
    auto py = [&](int v) { return oy + 20.0 + pos[v].second * (side - 26.0); };
    for (int i = 0; i < net.node_count(); ++i) {
        for (int j : net.neighbors(i)) {
            if (j <= i) continue;
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                          "stroke=\"#999\" stroke-width=\"0.8\"/>\n",
                          px(i), py(i), px(j), py(j));
            svg += buf;
        }
    }
    for (int v = 0; v < net.node_count(); ++v) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.2\" fill=\"#3b6ea5\" "
                      "stroke=\"#1d3a57\" stroke-width=\"0.6\"/>\n",
                      px(v), py(v));
        svg += buf;
    }
}

} // namespace

std::string emit_drawing(const Network& observed, const std::vector<Network>& draws,
                         std::uint64_t seed) {
    if (draws.size() > 3) throw ConfigError("drawing supports at most three draws");
    const double side = 300.0, pad = 12.0;
    const double total = 2 * side + 3 * pad;
    char buf[160];
    std::string svg;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                  "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  total, total, total, total);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#f7f7f7\"/>\n";

    for (int panel = 0; panel < 4; ++panel) {
        const double ox = pad + (panel % 2) * (side + pad);
        const double oy = pad + (panel / 2) * (side + pad);
        if (panel == 0) {
            append_panel(svg, observed, "observed", ox, oy, side, split_seed(seed, 0));
        } else if (static_cast<std::size_t>(panel) <= draws.size()) {
            append_panel(svg, draws[panel - 1], "draw " + std::to_string(panel), ox, oy,
                         side, split_seed(seed, panel));
        } else {
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                          "fill=\"#efefef\" stroke=\"#bbb\"/>\n",
                          ox, oy, side, side);
            svg += buf;
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace ergm
