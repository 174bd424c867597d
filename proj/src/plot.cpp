#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mterm/csv.hpp"
#include "mterm/experiment.hpp"

namespace mterm {

namespace {

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (n, value)
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// log-y line chart; values are clamped into [y_lo, y_hi] before mapping
std::string svg_log_chart(const std::string& title,
                          const std::vector<Series>& series, double y_lo,
                          double y_hi) {
    const double width = 640, height = 420;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    double x_lo = 1e300, x_hi = -1e300;
    for (const Series& s : series)
        for (const auto& p : s.points) {
            x_lo = std::min(x_lo, p.first);
            x_hi = std::max(x_hi, p.first);
        }
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    const double ly_lo = std::log10(y_lo), ly_hi = std::log10(y_hi);

    auto xmap = [&](double x) {
        return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr);
    };
    auto ymap = [&](double y) {
        const double ly =
            std::log10(std::clamp(y, y_lo, y_hi));
        return height - mb - (ly - ly_lo) / (ly_hi - ly_lo) * (height - mt - mb);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(width / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";

    // axes
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
           "\" y2=\"" + fmt(height - mb) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(height - mb) + "\" x2=\"" +
           fmt(width - mr) + "\" y2=\"" + fmt(height - mb) + "\" stroke=\"black\"/>\n";

    // decade grid lines and labels
    for (int d = static_cast<int>(std::ceil(ly_lo));
         d <= static_cast<int>(std::floor(ly_hi)); ++d) {
        const double y = ymap(std::pow(10.0, d));
        out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
               fmt(width - mr) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">1e" + std::to_string(d) + "</text>\n";
    }
    for (int x = static_cast<int>(x_lo); x <= static_cast<int>(x_hi); ++x) {
        out += "<text x=\"" + fmt(xmap(x)) + "\" y=\"" + fmt(height - mb + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" + std::to_string(x) + "</text>\n";
    }
    out += "<text x=\"" + fmt(width / 2) + "\" y=\"" + fmt(height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">n</text>\n";

    // series polylines + legend
    double legend_y = mt + 6;
    for (const Series& s : series) {
        std::string pts;
        for (const auto& p : s.points)
            pts += fmt(xmap(p.first)) + "," + fmt(ymap(p.second)) + " ";
        out += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        for (const auto& p : s.points)
            out += "<circle cx=\"" + fmt(xmap(p.first)) + "\" cy=\"" +
                   fmt(ymap(p.second)) + "\" r=\"2.5\" fill=\"" + s.color +
                   "\"/>\n";
        out += "<rect x=\"" + fmt(width - mr - 170) + "\" y=\"" +
               fmt(legend_y - 9) + "\" width=\"12\" height=\"4\" fill=\"" +
               s.color + "\"/>\n";
        out += "<text x=\"" + fmt(width - mr - 152) + "\" y=\"" + fmt(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label +
               "</text>\n";
        legend_y += 16;
    }
    out += "</svg>\n";
    return out;
}

std::pair<double, double> value_range(const std::vector<Series>& series) {
    double lo = 1e300, hi = -1e300;
    for (const Series& s : series)
        for (const auto& p : s.points) {
            if (p.second > 0) lo = std::min(lo, p.second);
            hi = std::max(hi, p.second);
        }
    if (!(lo < hi)) {
        lo = 1e-4;
        hi = 1.0;
    }
    return {std::pow(10.0, std::floor(std::log10(lo))),
            std::pow(10.0, std::ceil(std::log10(hi)))};
}

}  // namespace

std::vector<std::string> emit_plots(const OrderReport& report,
                                    const std::string& output_dir) {
    if (report.rows.empty())
        throw std::invalid_argument("emit_plots: empty report refused");

    Series upper{"e_m upper (m=2n)", "#1f77b4", {}};
    Series cert{"certificate", "#d62728", {}};
    Series psi{"psi(n)", "#2ca02c", {}};
    Series r_up{"error / psi(n)", "#1f77b4", {}};
    Series r_ct{"certificate / psi(n)", "#d62728", {}};
    for (const OrderRow& row : report.rows) {
        if (row.m != 2 * row.n) continue;  // one row per n in the plots
        upper.points.push_back({double(row.n), row.e_m_upper});
        cert.points.push_back({double(row.n), row.e_m_certificate});
        psi.points.push_back({double(row.n), row.psi_n_value});
        r_up.points.push_back({double(row.n), row.ratio_upper});
        r_ct.points.push_back({double(row.n), row.ratio_cert});
    }

    const auto [lo, hi] = value_range({upper, cert, psi});
    const std::string f1 = output_dir + "/order_plot.svg";
    write_text_file(
        f1, svg_log_chart("m-term error bounds vs psi(n)", {upper, cert, psi},
                          std::max(lo, 1e-300), hi));

    // ratio plot display range clamped to [1e-4, 1e4]
    const std::string f2 = output_dir + "/ratio_plot.svg";
    write_text_file(
        f2, svg_log_chart("order-relation ratio band", {r_up, r_ct}, 1e-4, 1e4));
    return {f1, f2};
}

}  // namespace mterm
