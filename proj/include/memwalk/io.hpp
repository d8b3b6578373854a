// io.hpp
// Locale-free text output (CSV, SVG) and the flat key=value run
// configuration. All floating-point fields go through format_double so the
// files are byte-identical across runs and machines.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "memwalk/analytics.hpp"
#include "memwalk/core.hpp"
#include "memwalk/designer.hpp"

namespace memwalk {

// Shortest-while-exact decimal form (17 significant digits, round-trip safe).
inline std::string format_double(double v) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    if (res.ec != std::errc())
        throw consistency_error("format_double: conversion failed");
    return std::string(buf.data(), res.ptr);
}

// ---------------------------------------------------------------------------
// CSV writers

// One row per light-cone grid point; the run configuration guarantees the
// cone never wraps, so these rows carry all nonzero mass.
inline void write_density_csv(std::ostream& out,
                              const std::vector<DensityProfile>& profiles) {
    out << "t,x,p\n";
    for (const DensityProfile& profile : profiles) {
        const int t = profile.t;
        for (int x = -t; x <= t; x += 2)
            out << t << ',' << x << ',' << format_double(profile.at(x)) << '\n';
    }
}

inline void write_moments_csv(std::ostream& out,
                              const std::vector<DensityProfile>& profiles) {
    out << "t,mean,var,sigma\n";
    for (const DensityProfile& profile : profiles)
        out << profile.t << ',' << format_double(profile.mean) << ','
            << format_double(profile.variance) << ','
            << format_double(profile.sigma) << '\n';
}

inline void write_program_csv(std::ostream& out, const ClosedFormParams& params) {
    out << "k,A_k,B_k\n";
    const auto& coeffs = params.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out << (i + 1) << ',' << format_double(coeffs[i].first) << ','
            << format_double(coeffs[i].second) << '\n';
}

inline void write_roundtrip_csv(std::ostream& out, const TargetDensity& target,
                                const std::vector<DensityProfile>& profiles) {
    out << "t,x,p_target,p_sim,delta\n";
    for (const DensityProfile& profile : profiles) {
        const int t = profile.t;
        for (int x = -t; x <= t; x += 2) {
            const double want = predicted_density(target, x, t);
            const double got = profile.at(x);
            out << t << ',' << x << ',' << format_double(want) << ','
                << format_double(got) << ',' << format_double(got - want) << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Run configuration: flat `key = value` lines, '#' lines are comments.

struct RunConfig {
    std::string scenario; // linear | parabolic | coefficients | target
    EngineKind engine = EngineKind::sparse;
    int N = 0;  // 0 = pick automatically
    int T = -1; // required for simulate/compare
    double b1 = -1.0;
    double z = 0.0;
    std::vector<std::pair<double, double>> coefficients;
    std::vector<double> f;
    std::vector<double> v_values;
    std::vector<double> z_values;
    std::string out;
    unsigned seed = 20260823u;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline double parse_double_field(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw validation_error("config: key '" + key + "' has a malformed number '" +
                               text + "'");
    return v;
}

inline long parse_int_field(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw validation_error("config: key '" + key + "' has a malformed integer '" +
                               text + "'");
    return v;
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) items.push_back(trim(item));
    return items;
}

} // namespace detail

inline EngineKind parse_engine(const std::string& name) {
    if (name == "sparse") return EngineKind::sparse;
    if (name == "dense") return EngineKind::dense;
    if (name == "analytic") return EngineKind::analytic;
    throw validation_error("config: unknown engine '" + name +
                           "' (expected sparse, dense, or analytic)");
}

inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::map<std::string, bool> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw validation_error("config: line " + std::to_string(line_no) +
                                   " is not of the form key = value");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw validation_error("config: line " + std::to_string(line_no) +
                                   " has an empty key or value");
        if (seen[key])
            throw validation_error("config: key '" + key + "' given twice");
        seen[key] = true;

        if (key == "scenario") {
            if (value != "linear" && value != "parabolic" &&
                value != "coefficients" && value != "target")
                throw validation_error("config: unknown scenario '" + value + "'");
            cfg.scenario = value;
        } else if (key == "engine") {
            cfg.engine = parse_engine(value);
        } else if (key == "N") {
            cfg.N = static_cast<int>(detail::parse_int_field(key, value));
        } else if (key == "T") {
            cfg.T = static_cast<int>(detail::parse_int_field(key, value));
        } else if (key == "b1") {
            cfg.b1 = detail::parse_double_field(key, value);
        } else if (key == "z") {
            cfg.z = detail::parse_double_field(key, value);
        } else if (key == "coefficients") {
            for (const std::string& item : detail::split_list(value)) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw validation_error(
                        "config: coefficients entries must look like A:B, got '" +
                        item + "'");
                cfg.coefficients.emplace_back(
                    detail::parse_double_field(key, item.substr(0, colon)),
                    detail::parse_double_field(key, item.substr(colon + 1)));
            }
        } else if (key == "f") {
            for (const std::string& item : detail::split_list(value))
                cfg.f.push_back(detail::parse_double_field(key, item));
        } else if (key == "v_values") {
            for (const std::string& item : detail::split_list(value))
                cfg.v_values.push_back(detail::parse_double_field(key, item));
        } else if (key == "z_values") {
            for (const std::string& item : detail::split_list(value))
                cfg.z_values.push_back(detail::parse_double_field(key, item));
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<unsigned>(detail::parse_int_field(key, value));
        } else {
            throw validation_error("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// SVG line plots (self-contained, fixed palette, no external assets).

enum class PlotStyle { solid, dashed, markers };

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    PlotStyle style = PlotStyle::solid;
};

namespace detail {

inline const char* plot_color(std::size_t i) {
    static const char* palette[] = {"#1b6ca8", "#c0392b", "#27824d",
                                    "#8e44ad", "#b07d12", "#16697a"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

inline std::string svg_num(double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

} // namespace detail

inline void write_svg_plot(std::ostream& out, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series) {
    constexpr double width = 640, height = 480;
    constexpr double ml = 70, mr = 160, mt = 48, mb = 56;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const PlotSeries& s : series)
        for (const auto& [x, y] : s.points) {
            if (first) {
                x_min = x_max = x;
                y_min = y_max = y;
                first = false;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (x_max - x_min < 1e-12) x_max = x_min + 1;
    if (y_max - y_min < 1e-12) y_max = y_min + 1;
    const double px = (width - ml - mr) / (x_max - x_min);
    const double py = (height - mt - mb) / (y_max - y_min);
    const auto sx = [&](double x) { return ml + (x - x_min) * px; };
    const auto sy = [&](double y) { return height - mb - (y - y_min) * py; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes with 5 ticks each
    out << "<g stroke=\"#333\" stroke-width=\"1\" font-family=\"sans-serif\" "
        << "font-size=\"11\">\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
        << width - mr << "\" y2=\"" << height - mb << "\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        const double yv = y_min + (y_max - y_min) * i / 4.0;
        out << "<line x1=\"" << detail::svg_num(sx(xv)) << "\" y1=\"" << height - mb
            << "\" x2=\"" << detail::svg_num(sx(xv)) << "\" y2=\"" << height - mb + 5
            << "\"/>\n";
        out << "<text x=\"" << detail::svg_num(sx(xv)) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">"
            << detail::svg_num(xv) << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << detail::svg_num(sy(yv))
            << "\" x2=\"" << ml << "\" y2=\"" << detail::svg_num(sy(yv)) << "\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << detail::svg_num(sy(yv) + 4)
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333\">"
            << detail::svg_num(yv) << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (mt + height - mb) / 2 << ")\">" << y_label
        << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = detail::plot_color(i);
        if (series[i].style == PlotStyle::markers) {
            for (const auto& [x, y] : series[i].points)
                out << "<circle cx=\"" << detail::svg_num(sx(x)) << "\" cy=\""
                    << detail::svg_num(sy(y)) << "\" r=\"2.6\" fill=\"" << color
                    << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.8\"";
            if (series[i].style == PlotStyle::dashed)
                out << " stroke-dasharray=\"7 5\"";
            out << " points=\"";
            for (const auto& [x, y] : series[i].points)
                out << detail::svg_num(sx(x)) << ',' << detail::svg_num(sy(y)) << ' ';
            out << "\"/>\n";
        }
        const double ly = mt + 18.0 * i;
        if (series[i].style == PlotStyle::markers)
            out << "<circle cx=\"" << width - mr + 24 << "\" cy=\""
                << detail::svg_num(ly) << "\" r=\"2.6\" fill=\"" << color << "\"/>\n";
        else
            out << "<line x1=\"" << width - mr + 12 << "\" y1=\""
                << detail::svg_num(ly) << "\" x2=\"" << width - mr + 36 << "\" y2=\""
                << detail::svg_num(ly) << "\" stroke=\"" << color
                << "\" stroke-width=\"1.8\""
                << (series[i].style == PlotStyle::dashed
                        ? " stroke-dasharray=\"7 5\""
                        : "")
                << "/>\n";
        out << "<text x=\"" << width - mr + 42 << "\" y=\"" << detail::svg_num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace memwalk
