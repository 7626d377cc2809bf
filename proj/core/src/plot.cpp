#include "combdrive/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace combdrive {

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
    int colour = 0;
    bool dashed = false;
};

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string &s) {
    std::string o;
    for (char c : s) {
        if (c == '<')
            o += "&lt;";
        else if (c == '>')
            o += "&gt;";
        else if (c == '&')
            o += "&amp;";
        else
            o += c;
    }
    return o;
}

// Axis ticks: decades on log axes, 5 even steps otherwise.
std::vector<double> ticks(double lo, double hi, bool log) {
    std::vector<double> t;
    if (log) {
        for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
            const double v = std::pow(10.0, e);
            if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12))
                t.push_back(v);
        }
        if (t.size() < 2)
            t = {lo, hi};
    } else {
        for (int k = 0; k <= 5; ++k)
            t.push_back(lo + (hi - lo) * k / 5.0);
    }
    return t;
}

std::string render(const std::string &title, const std::string &xlabel, const std::string &ylabel,
                   const std::vector<Series> &series, bool logx, bool logy) {
    const double W = 640, H = 420, left = 80, right = 170, top = 40, bottom = 60;
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto &s : series)
        for (auto [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y) || (logx && x <= 0) || (logy && y <= 0))
                continue;
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (!std::isfinite(xlo)) {
        xlo = ylo = logx ? 0.1 : 0.0;
        xhi = yhi = 1.0;
    }
    if (xhi == xlo) {
        xlo = logx ? xlo / 2 : xlo - 1;
        xhi = logx ? xhi * 2 : xhi + 1;
    }
    if (yhi == ylo) {
        ylo = logy ? ylo / 2 : ylo - 1;
        yhi = logy ? yhi * 2 : yhi + 1;
    }
    if (logy) {
        ylo = std::pow(10.0, std::floor(std::log10(ylo)));
        yhi = std::pow(10.0, std::ceil(std::log10(yhi)));
    } else {
        const double pad = 0.05 * (yhi - ylo);
        ylo -= pad;
        yhi += pad;
    }
    auto tx = [&](double x) {
        const double u = logx ? (std::log(x) - std::log(xlo)) / (std::log(xhi) - std::log(xlo))
                              : (x - xlo) / (xhi - xlo);
        return left + u * (W - left - right);
    };
    auto ty = [&](double y) {
        const double u = logy ? (std::log(y) - std::log(ylo)) / (std::log(yhi) - std::log(ylo))
                              : (y - ylo) / (yhi - ylo);
        return H - bottom - u * (H - top - bottom);
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right
      << "\" height=\"" << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(xlo, xhi, logx)) {
        const double x = tx(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << H - bottom << "\" x2=\"" << num(x)
          << "\" y2=\"" << H - bottom + 5 << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(x) << "\" y=\"" << H - bottom + 18
          << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (double t : ticks(ylo, yhi, logy)) {
        const double y = ty(t);
        o << "<line x1=\"" << left - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << left << "\" y2=\""
          << num(y) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << left - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
          << num(t) << "</text>\n";
    }
    o << "<text x=\"" << left + (W - left - right) / 2 << "\" y=\"" << H - 18
      << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
    o << "<text transform=\"translate(18," << top + (H - top - bottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";

    int row = 0;
    for (const auto &s : series) {
        const char *col = kPalette[s.colour % 6];
        std::string pts;
        for (auto [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y) || (logx && x <= 0) || (logy && y <= 0))
                continue;
            pts += num(tx(x)) + "," + num(ty(y)) + " ";
        }
        if (!pts.empty())
            pts.pop_back();
        o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << pts << "\"/>\n";
        if (!s.dashed)
            for (auto [x, y] : s.pts)
                if (std::isfinite(x) && std::isfinite(y) && (!logx || x > 0) && (!logy || y > 0))
                    o << "<circle cx=\"" << num(tx(x)) << "\" cy=\"" << num(ty(y))
                      << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        const double ly = top + 14 + 18 * row++;
        const double lx = W - right + 12;
        o << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22 << "\" y2=\""
          << ly - 4 << "\" stroke=\"" << col << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        o << "<text x=\"" << lx + 28 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

// Base rows grouped by alpha, sorted by epsilon.
std::map<double, std::vector<const SweepRow *>> base_rows(const SweepReport &rep) {
    std::map<double, std::vector<const SweepRow *>> by;
    for (const auto &r : rep.rows)
        if (r.c.refine == 1 && r.c.cutoff == CutoffVariant::TensorLinear && r.error.empty())
            by[r.c.alpha].push_back(&r);
    for (auto &[a, v] : by)
        std::sort(v.begin(), v.end(), [](auto *x, auto *y) { return x->epsilon < y->epsilon; });
    return by;
}

} // namespace

std::string force_plot_svg(const SweepReport &report) {
    std::vector<Series> series;
    int colour = 0;
    for (const auto &[alpha, rows] : base_rows(report)) {
        Series s{"alpha = " + num(alpha), {}, colour, false};
        Series lim{"limit, alpha = " + num(alpha), {}, colour, true};
        for (auto *r : rows) {
            s.pts.emplace_back(r->epsilon, r->force_volume);
            lim.pts.emplace_back(r->epsilon, r->limit_force);
        }
        series.push_back(s);
        series.push_back(lim);
        ++colour;
    }
    return render("Volume force vs epsilon", "epsilon", "scaled force", series, true, false);
}

std::string corrector_plot_svg(const SweepReport &report) {
    std::vector<Series> series;
    int colour = 0;
    for (const auto &[alpha, rows] : base_rows(report)) {
        for (auto [name, f] : {std::pair{"c1", &SweepRow::corr_c1}, std::pair{"c2", &SweepRow::corr_c2},
                               std::pair{"c3", &SweepRow::corr_c3}}) {
            Series s{std::string(name) + ", alpha = " + num(alpha), {}, colour++, false};
            for (auto *r : rows)
                s.pts.emplace_back(r->epsilon, r->*f);
            series.push_back(s);
        }
    }
    return render("Corrector norms vs epsilon", "epsilon", "squared corrector norm", series, true,
                  true);
}

} // namespace combdrive
