// Copyright 2026 The paqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "paqs/matrix.hpp"

namespace paqs {

/// 12 significant digits, '.' decimal separator, locale-independent.
inline std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string fmt_fixed(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

inline std::string csv_document(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
    out << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
    }
    return out.str();
}

namespace svg {

struct Rgb {
    int r, g, b;
    std::string str() const {
        return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
    }
};

/// Diverging blue-white-red map on [-1, 1].
inline Rgb diverging(double u) {
    u = std::clamp(u, -1.0, 1.0);
    if (u < 0.0) {
        const double w = 1.0 + u;  // 0 at -1, 1 at 0
        return {static_cast<int>(255 * w), static_cast<int>(255 * w), 255};
    }
    const double w = 1.0 - u;
    return {255, static_cast<int>(255 * w), static_cast<int>(255 * w)};
}

/// Sequential white-to-dark-blue map on [0, 1].
inline Rgb sequential(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return {static_cast<int>(255 - 205 * u), static_cast<int>(255 - 155 * u),
            static_cast<int>(255 - 75 * u)};
}

/// Minimal hand-emitted heatmap: one rect per cell, axis tick labels at the
/// range ends, and a small legend bar. Values are laid out row-major as
/// values[iy * nx + ix] with iy indexing `ys`.
inline std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<double>& values, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel, bool diverge) {
    const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
    const double W = 640, H = 520, L = 90, Rm = 110, Tm = 50, Bm = 70;
    const double pw = W - L - Rm, ph = H - Tm - Bm;
    double vmax = 1e-300, vmin = 1e300;
    for (double v : values) {
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    const double scale = diverge ? std::max(std::abs(vmax), std::abs(vmin)) : 1.0;

    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double v = values[static_cast<size_t>(iy) * nx + ix];
            const Rgb c = diverge ? diverging(scale > 0 ? v / scale : 0.0)
                                  : sequential(vmax > vmin ? (v - vmin) / (vmax - vmin) : 0.0);
            const double x = L + pw * ix / nx;
            const double y = Tm + ph - ph * (iy + 1) / ny;
            out << "<rect x='" << fmt_fixed(x, 2) << "' y='" << fmt_fixed(y, 2) << "' width='"
                << fmt_fixed(pw / nx + 0.5, 2) << "' height='" << fmt_fixed(ph / ny + 0.5, 2)
                << "' fill='" << c.str() << "'/>\n";
        }
    out << "<rect x='" << L << "' y='" << Tm << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='black'/>\n";
    out << "<text x='" << L + pw / 2 << "' y='" << H - 18 << "' text-anchor='middle' font-size='13'>"
        << xlabel << "</text>\n";
    out << "<text x='20' y='" << Tm + ph / 2
        << "' text-anchor='middle' font-size='13' transform='rotate(-90 20 " << Tm + ph / 2
        << ")'>" << ylabel << "</text>\n";
    out << "<text x='" << L << "' y='" << H - 42 << "' text-anchor='middle' font-size='11'>"
        << fmt_g12(xs.front()) << "</text>\n";
    out << "<text x='" << L + pw << "' y='" << H - 42 << "' text-anchor='middle' font-size='11'>"
        << fmt_g12(xs.back()) << "</text>\n";
    out << "<text x='" << L - 8 << "' y='" << Tm + ph << "' text-anchor='end' font-size='11'>"
        << fmt_g12(ys.front()) << "</text>\n";
    out << "<text x='" << L - 8 << "' y='" << Tm + 10 << "' text-anchor='end' font-size='11'>"
        << fmt_g12(ys.back()) << "</text>\n";
    // legend
    const int steps = 32;
    const double lx = W - Rm + 30, lw = 18, lh = ph;
    for (int k = 0; k < steps; ++k) {
        const double u = (k + 0.5) / steps;
        const Rgb c = diverge ? diverging(2.0 * u - 1.0) : sequential(u);
        out << "<rect x='" << lx << "' y='" << fmt_fixed(Tm + lh - lh * (k + 1) / steps, 2)
            << "' width='" << lw << "' height='" << fmt_fixed(lh / steps + 0.5, 2) << "' fill='"
            << c.str() << "'/>\n";
    }
    out << "<rect x='" << lx << "' y='" << Tm << "' width='" << lw << "' height='" << lh
        << "' fill='none' stroke='black'/>\n";
    const double lo = diverge ? -scale : vmin, hi = diverge ? scale : vmax;
    out << "<text x='" << lx + lw + 4 << "' y='" << Tm + lh << "' font-size='11'>" << fmt_g12(lo)
        << "</text>\n";
    out << "<text x='" << lx + lw + 4 << "' y='" << Tm + 10 << "' font-size='11'>" << fmt_g12(hi)
        << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

/// Polyline chart, one series per column of `series`.
inline std::string line_chart(const std::vector<double>& xs,
                              const std::vector<std::vector<double>>& series,
                              const std::string& title, const std::string& xlabel,
                              const std::string& ylabel) {
    const double W = 640, H = 480, L = 80, Rm = 30, Tm = 50, Bm = 60;
    const double pw = W - L - Rm, ph = H - Tm - Bm;
    double vmin = 1e300, vmax = -1e300;
    for (const auto& s : series)
        for (double v : s) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (vmax <= vmin) vmax = vmin + 1.0;
    const double xmin = xs.front(), xmax = xs.back() > xs.front() ? xs.back() : xs.front() + 1.0;

    const char* palette[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    for (size_t si = 0; si < series.size(); ++si) {
        out << "<polyline fill='none' stroke='" << palette[si % 6] << "' stroke-width='1.2' points='";
        for (size_t k = 0; k < xs.size(); ++k) {
            const double x = L + pw * (xs[k] - xmin) / (xmax - xmin);
            const double y = Tm + ph - ph * (series[si][k] - vmin) / (vmax - vmin);
            out << fmt_fixed(x, 2) << "," << fmt_fixed(y, 2) << " ";
        }
        out << "'/>\n";
    }
    out << "<rect x='" << L << "' y='" << Tm << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='black'/>\n";
    out << "<text x='" << L + pw / 2 << "' y='" << H - 14 << "' text-anchor='middle' font-size='13'>"
        << xlabel << "</text>\n";
    out << "<text x='18' y='" << Tm + ph / 2
        << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 " << Tm + ph / 2
        << ")'>" << ylabel << "</text>\n";
    out << "<text x='" << L << "' y='" << H - 36 << "' text-anchor='middle' font-size='11'>"
        << fmt_g12(xmin) << "</text>\n";
    out << "<text x='" << L + pw << "' y='" << H - 36 << "' text-anchor='middle' font-size='11'>"
        << fmt_g12(xmax) << "</text>\n";
    out << "<text x='" << L - 6 << "' y='" << Tm + ph << "' text-anchor='end' font-size='11'>"
        << fmt_g12(vmin) << "</text>\n";
    out << "<text x='" << L - 6 << "' y='" << Tm + 10 << "' text-anchor='end' font-size='11'>"
        << fmt_g12(vmax) << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace svg
}  // namespace paqs
