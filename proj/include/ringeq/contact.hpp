#pragma once

// Shapes above the contact pressure: the contact shape is shrunk by the
// similarity map and straight pieces are spliced in at its contact points,
// so that walls pressed together form lines of contact.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "ringeq/curvature.hpp"
#include "ringeq/error.hpp"
#include "ringeq/geometry.hpp"
#include "ringeq/numeric.hpp"
#include "ringeq/solver.hpp"

namespace ringeq {

/// Piece of the composite curve: a translated arc of the scaled contact
/// shape, or a straight piece of wall.
struct CompositePiece {
    enum class Kind { Arc, Straight };
    Kind kind = Kind::Arc;
    double begin = 0.0;  ///< arc: arclength on the scaled solution; straight: pass location
    double end = 0.0;
    Point2 offset;       ///< arc translation
    Point2 start;        ///< straight piece start point
    double angle = 0.0;  ///< straight piece direction (slope angle at the pass)
    double length = 0.0;
    double composite_begin = 0.0;  ///< arclength along the composite curve
};

/// Limits of the stress resultants at a junction of a bent arc and a line of contact.
struct JumpReport {
    double M_b = 0.0;
    double N_b = 0.0;
    double Q_b_plus = 0.0;
    double Q_b_minus = 0.0;
    double M_l = 0.0;
    double N_l = 0.0;
    double Q_l = 0.0;
    double moment_jump = 0.0;  ///< M_l - M_b = D sqrt(2 mu)
};

struct ContactLineShape {
    int n = 0;
    double sigma_hat = 0.0;
    double scale = 1.0;           ///< length factor (sigma_cn / sigma_hat)^(1/3)
    double segment_length = 0.0;  ///< 2 pi (1 - scale) / n
    double piece_length = 0.0;    ///< length of each straight piece of wall
    ContactSolution base;
    CurvatureSolution scaled = CurvatureSolution::circle(1.0, 0.0);
    std::vector<CompositePiece> pieces;
    ShapePolyline polyline;
    JumpReport jump_report;
    Material material;
    double total_length = 0.0;

    /// Point of the composite curve at arclength t in [0, total_length].
    Point2 point_at(double t) const;
};

namespace detail {

/// Arclengths on [0, n T) where the scaled contact shape touches itself.
inline std::vector<double> contact_passes(const ContactSolution& base, double lambda) {
    const double T = base.state.case_i_moduli().T1 / lambda;
    const double s1 = base.s1_minus / lambda;
    const double eps = 1e-9 * T;
    std::vector<double> passes;
    for (int j = 0; j < base.n; ++j) {
        passes.push_back(j * T + s1);
        if (s1 > eps) passes.push_back(j * T + T - s1);
    }
    std::sort(passes.begin(), passes.end());
    return passes;
}

}  // namespace detail

inline Point2 ContactLineShape::point_at(double t) const {
    const CompositePiece* pc = &pieces.front();
    for (const auto& p : pieces) {
        if (p.composite_begin <= t) pc = &p;
    }
    const double u = t - pc->composite_begin;
    if (pc->kind == CompositePiece::Kind::Straight) {
        return pc->start + u * Point2{std::cos(pc->angle), std::sin(pc->angle)};
    }
    return shape_point(pc->begin + u, scaled) + pc->offset;
}

/// Builds the composite curve from a solved contact state. scale_override
/// replaces the similarity factor (for negative controls only; the pressure
/// stays sigma_hat).
inline ContactLineShape build_contact_line_shape(const ContactSolution& base, double sigma_hat,
                                                 std::size_t n_samples = 4096, const Material& mat = {},
                                                 std::optional<double> scale_override = std::nullopt) {
    if (!(sigma_hat >= base.sigma_cn * (1.0 - 1e-12))) {
        throw BelowContact("sigma_hat = " + std::to_string(sigma_hat) + " is below the contact pressure " +
                           std::to_string(base.sigma_cn) + " of mode " + std::to_string(base.n));
    }
    const int n = base.n;
    ContactLineShape shape;
    shape.n = n;
    shape.sigma_hat = sigma_hat;
    shape.base = base;
    shape.material = mat;
    shape.scale = scale_override ? *scale_override : std::min(1.0, std::cbrt(base.sigma_cn / sigma_hat));
    if (!(shape.scale > 0.0 && shape.scale <= 1.0)) throw DomainError("scale must lie in (0, 1]");
    const double lambda = 1.0 / shape.scale;
    shape.scaled = base.state.solution().scaled(lambda);
    shape.segment_length = 2.0 * std::numbers::pi * (1.0 - shape.scale) / n;

    const auto passes = detail::contact_passes(base, lambda);
    const double inserted = 2.0 * std::numbers::pi * (1.0 - shape.scale);
    shape.piece_length = inserted / static_cast<double>(passes.size());
    const double w = shape.piece_length;
    const double L = n * shape.scaled.period();
    const bool splice = w > 1e-14;

    // arcs between consecutive passes, each shifted by the pieces spliced before it
    std::vector<CompositePiece> pieces;
    const auto arc = [](double a, double b, Point2 off) {
        CompositePiece pc;
        pc.begin = a;
        pc.end = b;
        pc.offset = off;
        return pc;
    };
    Point2 offset{};
    double prev = 0.0;
    for (double p : passes) {
        if (p > prev) pieces.push_back(arc(prev, p, offset));
        if (splice) {
            const double ang = shape.scaled.at(p).phi;
            CompositePiece st;
            st.kind = CompositePiece::Kind::Straight;
            st.begin = st.end = p;
            st.angle = ang;
            st.length = w;
            st.start = shape_point(p, shape.scaled) + offset;
            pieces.push_back(st);
            offset = offset + w * Point2{std::cos(ang), std::sin(ang)};
        }
        prev = p;
    }
    if (L > prev) pieces.push_back(arc(prev, L, offset));

    // centre the curve: remove the length-weighted mean arc offset
    Point2 mean{};
    double arc_total = 0.0;
    for (const auto& pc : pieces) {
        if (pc.kind != CompositePiece::Kind::Arc) continue;
        mean = mean + (pc.end - pc.begin) * pc.offset;
        arc_total += pc.end - pc.begin;
    }
    mean = (1.0 / arc_total) * mean;
    double t = 0.0;
    for (auto& pc : pieces) {
        pc.composite_begin = t;
        if (pc.kind == CompositePiece::Kind::Arc) {
            pc.offset = pc.offset - mean;
            t += pc.end - pc.begin;
        } else {
            pc.start = pc.start - mean;
            t += pc.length;
        }
    }
    shape.total_length = t;
    shape.pieces = std::move(pieces);

    // samples: every piece endpoint plus uniform interior points
    auto& samples = shape.polyline.samples;
    samples.reserve(n_samples + 2 * shape.pieces.size() + 1);
    for (const auto& pc : shape.pieces) {
        const double len = pc.kind == CompositePiece::Kind::Arc ? pc.end - pc.begin : pc.length;
        const auto m = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(static_cast<double>(n_samples) * len / shape.total_length)));
        for (std::size_t i = 0; i < m; ++i) {
            const double u = len * static_cast<double>(i) / static_cast<double>(m);
            ShapeSample smp;
            smp.s = pc.composite_begin + u;
            if (pc.kind == CompositePiece::Kind::Arc) {
                const auto c = shape.scaled.at(pc.begin + u);
                const auto r = shape_point(c, shape.scaled.params()) + pc.offset;
                const auto f = forces_moment(c, shape.scaled.params(), mat);
                smp = {smp.s, r.x, r.y, c.kappa, c.phi, f.M, f.N, f.Q};
            } else {
                const Point2 r = pc.start + u * Point2{std::cos(pc.angle), std::sin(pc.angle)};
                smp = {smp.s, r.x, r.y, 0.0, pc.angle, -mat.rigidity * mat.natural_curvature, 0.0, 0.0};
            }
            samples.push_back(smp);
        }
    }
    {
        const auto& last = shape.pieces.back();
        const auto c = shape.scaled.at(last.end);
        const auto r = shape_point(c, shape.scaled.params()) + last.offset;
        const auto f = forces_moment(c, shape.scaled.params(), mat);
        samples.push_back({shape.total_length, r.x, r.y, c.kappa, c.phi, f.M, f.N, f.Q});
    }
    auto& d = shape.polyline.diagnostics;
    d.closure_error = std::hypot(samples.back().x - samples.front().x, samples.back().y - samples.front().y);
    d.slope_closure_error = std::abs(samples.back().phi - samples.front().phi - 2.0 * std::numbers::pi);
    d.length_error = std::abs(shape.total_length - 2.0 * std::numbers::pi);
    d.self_intersecting = self_intersects(shape.polyline);
    d.mode_n = n;

    // limits at a junction
    const double mu = shape.scaled.params().mu;
    const double D = mat.rigidity, k0 = mat.natural_curvature;
    const double wb = std::sqrt(std::max(0.0, 2.0 * mu));
    auto& j = shape.jump_report;
    j.M_b = -D * (wb + k0);
    j.N_b = -0.5 * D * (wb * wb - 2.0 * mu);
    const double Pb = eval_P(-wb, shape.scaled.params());
    j.Q_b_plus = D * std::sqrt(std::max(0.0, Pb));
    j.Q_b_minus = -j.Q_b_plus;
    j.M_l = -D * k0;
    j.N_l = 0.0;
    j.Q_l = 0.0;
    j.moment_jump = j.M_l - j.M_b;
    return shape;
}

inline ContactLineShape build_contact_line_shape(int n, double sigma_hat, std::size_t n_samples = 4096,
                                                 const Material& mat = {}) {
    return build_contact_line_shape(solve_contact_pressure(n), sigma_hat, n_samples, mat);
}

inline JumpReport jump_values(const ContactLineShape& shape) { return shape.jump_report; }

struct JunctionReport {
    double max_tangent_jump = 0.0;   ///< radians, wrapped to [-pi, pi]
    double max_position_gap = 0.0;
};

/// Mismatch of tangent and position across every piece boundary, including
/// the wrap from the last piece back to the first.
inline JunctionReport junction_continuity(const ContactLineShape& shape) {
    struct End {
        Point2 r;
        double phi;
    };
    const auto ends = [&](const CompositePiece& pc) {
        if (pc.kind == CompositePiece::Kind::Straight) {
            const Point2 t{std::cos(pc.angle), std::sin(pc.angle)};
            return std::pair<End, End>{{pc.start, pc.angle}, {pc.start + pc.length * t, pc.angle}};
        }
        const auto a = shape.scaled.at(pc.begin), b = shape.scaled.at(pc.end);
        return std::pair<End, End>{{shape_point(a, shape.scaled.params()) + pc.offset, a.phi},
                                   {shape_point(b, shape.scaled.params()) + pc.offset, b.phi}};
    };
    JunctionReport out;
    const auto& ps = shape.pieces;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const End prev = ends(ps[i]).second;
        const End next = ends(ps[(i + 1) % ps.size()]).first;
        const double d = std::remainder(next.phi - prev.phi, 2.0 * std::numbers::pi);
        out.max_tangent_jump = std::max(out.max_tangent_jump, std::abs(d));
        out.max_position_gap = std::max(out.max_position_gap, norm(next.r - prev.r));
    }
    return out;
}

struct BalanceResiduals {
    double force_residual = 0.0;        ///< sum over sub-arcs of |F(end) - F(start) + int p n ds|
    double moment_residual = 0.0;       ///< sum over sub-arcs of |M(end) - M(start) + int F.n ds|
    double total_force_residual = 0.0;  ///< magnitude of the summed force residual vectors
    double total_moment_residual = 0.0;
};

/// Force and moment balance under the pressure sigma_hat * D acting on the
/// bent arcs only (straight pieces carry no load and no stress). Each arc is
/// cut at multiples of half a period so that no piece runs between two
/// coincident points. F is taken from the stress resultants (N t + Q n); the
/// moment integrand uses the pressure form -p r.t, so it involves the
/// geometry rather than Q.
inline BalanceResiduals total_balance_check(const ContactLineShape& shape) {
    const auto rule = numeric::gauss_legendre(20);
    const double D = shape.material.rigidity;
    const double p = shape.sigma_hat * D;
    const auto& sol = shape.scaled;
    const double half = 0.5 * sol.period();
    const auto force = [&](double s) {
        const auto c = sol.at(s);
        const auto fm = forces_moment(c, sol.params(), shape.material);
        const Point2 t{std::cos(c.phi), std::sin(c.phi)}, nn{-std::sin(c.phi), std::cos(c.phi)};
        return fm.N * t + fm.Q * nn;
    };
    BalanceResiduals out;
    Point2 total_f{};
    double total_m = 0.0;
    const auto balance = [&](double a, double b) {
        const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / (sol.period() / 32.0))));
        const double hw = 0.5 * (b - a) / panels;
        Point2 load{};
        double moment = 0.0;
        for (int k = 0; k < panels; ++k) {
            const double mid = a + (2 * k + 1) * hw;
            for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
                const auto c = sol.at(mid + hw * rule.nodes[g]);
                const Point2 nn{-std::sin(c.phi), std::cos(c.phi)}, t{std::cos(c.phi), std::sin(c.phi)};
                const Point2 r = shape_point(c, sol.params());
                load = load + (rule.weights[g] * hw * p) * nn;
                moment += rule.weights[g] * hw * (-p * dot(r, t));
            }
        }
        const Point2 rf = force(b) - force(a) + load;
        const double rm = forces_moment(b, sol, shape.material).M - forces_moment(a, sol, shape.material).M + moment;
        out.force_residual += norm(rf);
        out.moment_residual += std::abs(rm);
        total_f = total_f + rf;
        total_m += rm;
    };
    for (const auto& pc : shape.pieces) {
        if (pc.kind != CompositePiece::Kind::Arc) continue;
        double a = pc.begin;
        for (double cut = (std::floor(pc.begin / half) + 1.0) * half; cut < pc.end - 1e-12 * half; cut += half) {
            if (cut > a + 1e-12 * half) {
                balance(a, cut);
                a = cut;
            }
        }
        balance(a, pc.end);
    }
    out.total_force_residual = norm(total_f);
    out.total_moment_residual = std::abs(total_m);
    return out;
}

/// Multiplier (sigma_cn / sigma)^(4/3) of the conductivity at contact.
inline double conductivity_ratio(double sigma_cn, double sigma) {
    if (!(sigma_cn > 0.0)) throw DomainError("contact pressure must be positive");
    if (sigma < sigma_cn) {
        throw BelowContact("sigma = " + std::to_string(sigma) + " is below the contact pressure " + std::to_string(sigma_cn));
    }
    if (sigma == sigma_cn) return 1.0;
    return std::pow(sigma_cn / sigma, 4.0 / 3.0);
}

inline double conductivity_ratio(int n, double sigma) {
    return conductivity_ratio(solve_contact_pressure(n).sigma_cn, sigma);
}

}  // namespace ringeq
