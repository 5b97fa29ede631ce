#pragma once

// Text serializations of shapes and run records, and atomic file writes.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "ringeq/error.hpp"
#include "ringeq/geometry.hpp"

namespace ringeq::io {

/// Shortest round-trip-safe decimal text (17 significant digits).
inline std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string shape_csv(const ShapePolyline& poly) {
    std::ostringstream os;
    os << "s,x,y,kappa,phi,M,N,Q\n";
    for (const auto& p : poly.samples) {
        os << fmt(p.s) << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.kappa) << ',' << fmt(p.phi) << ','
           << fmt(p.M) << ',' << fmt(p.N) << ',' << fmt(p.Q) << '\n';
    }
    return os.str();
}

/// Single closed path, y axis pointing up, viewBox padded by 5% of the
/// larger extent on each side.
inline std::string shape_svg(const ShapePolyline& poly) {
    if (poly.samples.empty()) throw DomainError("cannot draw an empty polyline");
    double xmin = poly.samples[0].x, xmax = xmin, ymin = -poly.samples[0].y, ymax = ymin;
    for (const auto& p : poly.samples) {
        xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, -p.y), ymax = std::max(ymax, -p.y);
    }
    const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-12});
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(xmin - pad) << ' '
       << fmt(ymin - pad) << ' ' << fmt(xmax - xmin + 2 * pad) << ' ' << fmt(ymax - ymin + 2 * pad) << "\">\n"
       << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt(pad / 10.0) << "\" d=\"";
    for (std::size_t i = 0; i < poly.samples.size(); ++i) {
        os << (i == 0 ? "M" : " L") << fmt(poly.samples[i].x) << ',' << fmt(-poly.samples[i].y);
    }
    os << " Z\"/>\n</svg>\n";
    return os.str();
}

/// Writes to a sibling temporary file, then renames over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::filesystem::create_directories(dir);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw Error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

/// Ordered key=value record of one command run.
struct RunRecord {
    std::string command;
    std::string version;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::vector<std::pair<std::string, std::string>> files;

    void input(const std::string& k, const std::string& v) { inputs.emplace_back(k, v); }
    void input(const std::string& k, double v) { inputs.emplace_back(k, fmt(v)); }
    void input(const std::string& k, int v) { inputs.emplace_back(k, std::to_string(v)); }
    void output(const std::string& k, const std::string& v) { outputs.emplace_back(k, v); }
    void output(const std::string& k, double v) { outputs.emplace_back(k, fmt(v)); }
    void output(const std::string& k, int v) { outputs.emplace_back(k, std::to_string(v)); }
    void output(const std::string& k, bool v) { outputs.emplace_back(k, v ? "true" : "false"); }
    void output(const std::string& k, const char* v) { outputs.emplace_back(k, v); }

    std::string text() const {
        std::ostringstream os;
        os << "command=" << command << '\n' << "version=" << version << '\n';
        for (const auto& [k, v] : inputs) os << "input." << k << '=' << v << '\n';
        for (const auto& [k, v] : outputs) os << "output." << k << '=' << v << '\n';
        for (const auto& [k, v] : files) os << "file." << k << '=' << v << '\n';
        return os.str();
    }
};

/// Parses key=value lines (blank lines and '#' comments skipped).
inline std::vector<std::pair<std::string, std::string>> parse_record(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("malformed record line: " + line);
        out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

}  // namespace ringeq::io
