#pragma once

// Closed-form position of the ring, internal forces, sampling, and the
// polyline checks (closure, simple closedness, dihedral symmetry, area).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "ringeq/curvature.hpp"
#include "ringeq/error.hpp"

namespace ringeq {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Bending rigidity and natural (unstressed) curvature.
struct Material {
    double rigidity = 1.0;
    double natural_curvature = 1.0;
};

/// Position from the first integrals of the force balance, no quadrature:
///   x = kappa' cos(phi)/sigma + (kappa^2 - 2 mu) sin(phi)/(2 sigma)
///   y = kappa' sin(phi)/sigma - (kappa^2 - 2 mu) cos(phi)/(2 sigma)
/// The origin is the centre of the pressure load.
inline Point2 shape_point(const CurvaturePoint& c, const PolyParams& p) {
    if (p.sigma == 0.0) throw DomainError("shape_point needs sigma != 0");
    const double cp = std::cos(c.phi), sp = std::sin(c.phi);
    const double g = 0.5 * (c.kappa * c.kappa - 2.0 * p.mu);
    return {(c.kappa_prime * cp + g * sp) / p.sigma, (c.kappa_prime * sp - g * cp) / p.sigma};
}

inline Point2 shape_point(double s, const CurvatureSolution& sol) { return shape_point(sol.at(s), sol.params()); }

/// Bending moment, tangential and normal force resultants.
struct ForcesMoment {
    double M = 0.0;
    double N = 0.0;
    double Q = 0.0;
};

/// M = D (kappa - kappa_nat), N = -D (kappa^2 - 2 mu)/2, Q = -D kappa'.
inline ForcesMoment forces_moment(const CurvaturePoint& c, const PolyParams& p, const Material& mat = {}) {
    const double D = mat.rigidity;
    return {D * (c.kappa - mat.natural_curvature), -0.5 * D * (c.kappa * c.kappa - 2.0 * p.mu), -D * c.kappa_prime};
}

inline ForcesMoment forces_moment(double s, const CurvatureSolution& sol, const Material& mat = {}) {
    return forces_moment(sol.at(s), sol.params(), mat);
}

struct ShapeSample {
    double s = 0.0;
    double x = 0.0;
    double y = 0.0;
    double kappa = 0.0;
    double phi = 0.0;
    double M = 0.0;
    double N = 0.0;
    double Q = 0.0;
};

struct ShapeDiagnostics {
    double closure_error = 0.0;        ///< |r(L) - r(0)|
    double slope_closure_error = 0.0;  ///< |phi(L) - phi(0) - 2 pi|
    double length_error = 0.0;         ///< |L - 2 pi|
    bool self_intersecting = false;
    int mode_n = 0;
};

/// Samples s_i = i L / N for i = 0..N; the last sample repeats the first
/// point of a closed curve.
struct ShapePolyline {
    std::vector<ShapeSample> samples;
    ShapeDiagnostics diagnostics;

    std::vector<Point2> points() const {
        std::vector<Point2> out;
        out.reserve(samples.size());
        for (const auto& s : samples) out.push_back({s.x, s.y});
        return out;
    }
};

namespace detail {

inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

/// Points of a closed polyline without the repeated endpoint.
inline std::vector<Point2> open_ring(std::span<const Point2> pts) {
    std::vector<Point2> v(pts.begin(), pts.end());
    if (v.size() > 1) {
        double ext = 0.0;
        for (const auto& p : v) ext = std::max({ext, std::abs(p.x), std::abs(p.y)});
        if (norm(v.front() - v.back()) <= 1e-12 * std::max(1.0, ext)) v.pop_back();
    }
    return v;
}

/// Signed distance from p to the ring near segment j (window of +-w segments);
/// positive on the left of the ring direction.
inline double local_signed_distance(const std::vector<Point2>& v, std::size_t j, std::size_t w, Point2 p) {
    const std::size_t m = v.size();
    double best = std::numeric_limits<double>::infinity();
    double sign = 1.0;
    for (std::size_t d = 0; d <= 2 * w; ++d) {
        const std::size_t k = (j + m - w + d) % m;
        const Point2 a = v[k], b = v[(k + 1) % m];
        const double dist = point_segment_distance(p, a, b);
        if (dist < best) {
            best = dist;
            sign = orient(a, b, p) >= 0.0 ? 1.0 : -1.0;
        }
    }
    return sign * best;
}

/// Deepest excursion of the ring, walking from vertex start in direction
/// step (+1 / -1), to the side of segment j it first lies on; the walk stops
/// when it crosses back.
inline double crossing_depth(const std::vector<Point2>& v, std::size_t start, int step, std::size_t j, std::size_t w) {
    const std::size_t m = v.size();
    const double first = local_signed_distance(v, j, w, v[start]);
    double depth = std::abs(first);
    std::size_t k = start;
    for (std::size_t it = 0; it < w; ++it) {
        k = step > 0 ? (k + 1) % m : (k + m - 1) % m;
        const double sd = local_signed_distance(v, j, w, v[k]);
        if ((sd > 0.0) != (first > 0.0)) break;
        depth = std::max(depth, std::abs(sd));
    }
    return depth;
}

}  // namespace detail

/// True if two non-adjacent edges of the closed polyline cross properly and
/// the branches separate by more than touch_tol (relative to the extent of
/// the curve) on both sides of the crossing. Tangential contact, including
/// the jitter of a sampled tacnode, counts as touching, not crossing.
inline bool self_intersects(std::span<const Point2> pts, double touch_tol = 1e-5) {
    const auto v = detail::open_ring(pts);
    const std::size_t m = v.size();
    if (m < 4) return false;

    double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
    for (const auto& p : v) {
        xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
    }
    const double tol = touch_tol * std::max({xmax - xmin, ymax - ymin, std::numeric_limits<double>::min()});
    const std::size_t window = std::clamp<std::size_t>(m / 20, 8, 200);

    for (std::size_t i = 0; i < m; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % m];
        const double ax0 = std::min(a.x, b.x), ax1 = std::max(a.x, b.x);
        const double ay0 = std::min(a.y, b.y), ay1 = std::max(a.y, b.y);
        for (std::size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            const Point2 c = v[j], d = v[(j + 1) % m];
            if (std::max(c.x, d.x) < ax0 || std::min(c.x, d.x) > ax1) continue;
            if (std::max(c.y, d.y) < ay0 || std::min(c.y, d.y) > ay1) continue;
            const double d1 = detail::orient(a, b, c), d2 = detail::orient(a, b, d);
            const double d3 = detail::orient(c, d, a), d4 = detail::orient(c, d, b);
            const bool proper = ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
                                ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
            if (!proper) continue;
            const double ahead = detail::crossing_depth(v, (i + 1) % m, +1, j, window);
            const double behind = detail::crossing_depth(v, i, -1, j, window);
            if (ahead > tol && behind > tol) return true;
        }
    }
    return false;
}

inline bool self_intersects(const ShapePolyline& poly, double touch_tol = 1e-5) {
    const auto pts = poly.points();
    return self_intersects(std::span<const Point2>(pts), touch_tol);
}

/// Signed shoelace area; positive for counterclockwise traversal.
inline double enclosed_area(std::span<const Point2> pts) {
    const auto v = detail::open_ring(pts);
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

inline double enclosed_area(const ShapePolyline& poly) {
    const auto pts = poly.points();
    return enclosed_area(std::span<const Point2>(pts));
}

/// Samples N + 1 points of the curve over n periods. N >= 16 n.
inline ShapePolyline sample_shape(const CurvatureSolution& sol, int n, std::size_t n_samples, const Material& mat = {}) {
    if (n < 1) throw DomainError("mode number must be >= 1");
    if (n_samples < 16 * static_cast<std::size_t>(n)) throw DomainError("need at least 16 samples per period");
    const double L = n * sol.period();
    ShapePolyline out;
    out.samples.reserve(n_samples + 1);
    for (std::size_t i = 0; i <= n_samples; ++i) {
        const double s = L * static_cast<double>(i) / static_cast<double>(n_samples);
        const auto c = sol.at(s);
        const auto r = shape_point(c, sol.params());
        const auto f = forces_moment(c, sol.params(), mat);
        out.samples.push_back({s, r.x, r.y, c.kappa, c.phi, f.M, f.N, f.Q});
    }
    const auto& first = out.samples.front();
    const auto& last = out.samples.back();
    out.diagnostics.closure_error = std::hypot(last.x - first.x, last.y - first.y);
    out.diagnostics.slope_closure_error = std::abs(last.phi - first.phi - 2.0 * std::numbers::pi);
    out.diagnostics.length_error = std::abs(L - 2.0 * std::numbers::pi);
    out.diagnostics.self_intersecting = self_intersects(out);
    out.diagnostics.mode_n = n;
    return out;
}

/// Largest distance from a reflected sample to the nearest sample, over the
/// n reflection axes through the origin along the normals at s = i T / 2.
/// Zero for a shape with the n-fold dihedral symmetry.
inline double symmetry_check(const ShapePolyline& poly, const CurvatureSolution& sol, int n) {
    if (n < 1) throw DomainError("mode number must be >= 1");
    const auto pts = detail::open_ring(std::span<const Point2>(poly.points()));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double phi = sol.at(0.5 * i * sol.period()).phi;
        const Point2 axis{-std::sin(phi), std::cos(phi)};
        for (const auto& p : pts) {
            const Point2 q = 2.0 * dot(p, axis) * axis - p;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& r : pts) best = std::min(best, norm(q - r));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

}  // namespace ringeq
