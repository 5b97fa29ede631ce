#pragma once

// The quartic P(kappa) = -kappa^4/4 + mu kappa^2 + 2 sigma kappa + eps whose
// square root is the arclength derivative of the curvature, and the two-way
// map between its coefficients and its roots.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <variant>
#include <vector>

#include "ringeq/error.hpp"

namespace ringeq {

/// Coefficients (mu, sigma, eps) of P. sigma is the pressure divided by the
/// bending rigidity.
struct PolyParams {
    double mu = 0.0;
    double sigma = 0.0;
    double epsilon = 0.0;
};

/// Two simple real roots alpha < beta and the conjugate pair
/// -(alpha + beta)/2 +- i eta.
struct CaseIRoots {
    double alpha = 0.0;
    double beta = 0.0;
    double eta = 0.0;

    std::complex<double> gamma() const { return {-(alpha + beta) / 2.0, eta}; }
};

/// Four real roots alpha < beta < gamma < delta.
struct CaseIIRoots {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

using RootSet = std::variant<CaseIRoots, CaseIIRoots>;

/// Roots together with the coincidence flag raised by roots_from_params.
struct RootAnalysis {
    RootSet roots;
    bool degenerate = false;
};

inline double eval_P(double kappa, const PolyParams& p) {
    const double k2 = kappa * kappa;
    return -0.25 * k2 * k2 + p.mu * k2 + 2.0 * p.sigma * kappa + p.epsilon;
}

/// dP/dkappa.
inline double eval_dP(double kappa, const PolyParams& p) {
    return -kappa * kappa * kappa + 2.0 * p.mu * kappa + 2.0 * p.sigma;
}

/// Vieta: mu, sigma, eps from (alpha, beta, gamma) with the fourth root
/// fixed by the vanishing cubic coefficient.
inline PolyParams params_from_roots(const RootSet& r) {
    return std::visit(
        [](const auto& v) -> PolyParams {
            using T = std::decay_t<decltype(v)>;
            std::complex<double> a = v.alpha, b = v.beta, g;
            if constexpr (std::is_same_v<T, CaseIRoots>) {
                g = v.gamma();
            } else {
                g = v.gamma;
            }
            const auto mu = 0.25 * (a * a + b * b + g * g + a * b + a * g + b * g);
            const auto sigma = -0.125 * (a + b) * (a + g) * (b + g);
            const auto eps = 0.25 * a * b * g * (a + b + g);
            return {mu.real(), sigma.real(), eps.real()};
        },
        r);
}

/// alpha, beta from the positive parameters (sigma, eta, q):
/// alpha = 4 sigma/(eta^2 + q^2) - q, beta = alpha + 2q.
inline CaseIRoots roots_from_sigma_eta_q(double sigma, double eta, double q) {
    if (!(sigma > 0.0 && eta > 0.0 && q > 0.0)) {
        throw DomainError("roots_from_sigma_eta_q requires sigma, eta, q > 0");
    }
    const double m = 4.0 * sigma / (eta * eta + q * q);
    return {m - q, m + q, eta};
}

inline double root_sum(const RootSet& r) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CaseIRoots>) {
                return v.alpha + v.beta + 2.0 * v.gamma().real();
            } else {
                return v.alpha + v.beta + v.gamma + v.delta;
            }
        },
        r);
}

/// Roots scaled by lambda (the similarity map kappa -> lambda kappa).
inline RootSet scale_roots(const RootSet& r, double lambda) {
    return std::visit(
        [lambda](const auto& v) -> RootSet {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CaseIRoots>) {
                return CaseIRoots{lambda * v.alpha, lambda * v.beta, lambda * v.eta};
            } else {
                return CaseIIRoots{lambda * v.alpha, lambda * v.beta, lambda * v.gamma, lambda * v.delta};
            }
        },
        r);
}

namespace detail {

/// Real roots of t^3 - 2 mu t - 2 sigma (the critical points of P), ascending.
inline std::vector<double> critical_points(const PolyParams& p) {
    const double pc = -2.0 * p.mu, qc = -2.0 * p.sigma;
    std::vector<double> t;
    const double disc = -(4.0 * pc * pc * pc + 27.0 * qc * qc);
    if (disc > 0.0) {
        const double m = 2.0 * std::sqrt(-pc / 3.0);
        const double arg = std::clamp(3.0 * qc / (pc * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int i = 0; i < 3; ++i) t.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * i / 3.0));
    } else {
        const double s = std::sqrt(std::max(0.0, qc * qc / 4.0 + pc * pc * pc / 27.0));
        t.push_back(std::cbrt(-qc / 2.0 + s) + std::cbrt(-qc / 2.0 - s));
    }
    // polish against the cubic itself
    for (double& x : t) {
        for (int it = 0; it < 4; ++it) {
            const double f = x * x * x + pc * x + qc;
            const double df = 3.0 * x * x + pc;
            if (df == 0.0) break;
            x -= f / df;
        }
    }
    std::sort(t.begin(), t.end());
    return t;
}

/// Root of P on [lo, hi] where P changes sign; bisection safeguarded Newton.
inline double bracketed_root(const PolyParams& p, double lo, double hi) {
    double flo = eval_P(lo, p);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = eval_P(x, p);
        if (f == 0.0) return x;
        if ((f < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }
        const double df = eval_dP(x, p);
        double next = df != 0.0 ? x - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            return next;
        }
        x = next;
    }
    return x;
}

}  // namespace detail

/// Real-root isolation between the critical points of P, then classification.
/// Case II if four real roots, Case I if two (the conjugate pair recovered by
/// deflation). A critical point where P vanishes is a double root; it sets the
/// degenerate flag and, when it is the pair, gives Case I with eta = 0.
inline RootAnalysis roots_from_params(const PolyParams& p) {
    constexpr double kCoincide = 1e-10;
    const auto crit = detail::critical_points(p);

    const double cauchy = 1.0 + std::max({4.0 * std::abs(p.mu), 8.0 * std::abs(p.sigma), 4.0 * std::abs(p.epsilon)});
    std::vector<double> nodes;
    nodes.push_back(-cauchy);
    for (double c : crit) nodes.push_back(c);
    nodes.push_back(cauchy);

    const auto term_scale = [&p](double x) {
        const double x2 = x * x;
        return std::max({1.0, 0.25 * x2 * x2, std::abs(p.mu) * x2, 2.0 * std::abs(p.sigma * x), std::abs(p.epsilon)});
    };

    std::vector<double> simple;
    std::vector<double> doubles;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i], b = nodes[i + 1];
        const double fa = eval_P(a, p), fb = eval_P(b, p);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) simple.push_back(detail::bracketed_root(p, a, b));
    }
    for (double c : crit) {
        if (std::abs(eval_P(c, p)) <= 1e-13 * term_scale(c)) doubles.push_back(c);
    }

    bool degenerate = !doubles.empty();
    for (std::size_t i = 0; i + 1 < simple.size(); ++i) {
        if (simple[i + 1] - simple[i] <= kCoincide * std::max(1.0, std::abs(simple[i]))) degenerate = true;
    }

    if (simple.size() == 4) {
        return {CaseIIRoots{simple[0], simple[1], simple[2], simple[3]}, degenerate};
    }
    if (simple.size() == 2) {
        const double alpha = simple[0], beta = simple[1];
        // divide kappa^4 - 4 mu kappa^2 - 8 sigma kappa - 4 eps by (kappa - alpha)(kappa - beta)
        const double b1 = -(alpha + beta), b0 = alpha * beta;
        const double c2 = -4.0 * p.mu;
        const double pq = alpha + beta;
        const double r = c2 - b0 - b1 * pq;
        const double eta2 = r - 0.25 * pq * pq;
        const double eta = eta2 > 0.0 ? std::sqrt(eta2) : 0.0;
        if (eta <= kCoincide * std::max({1.0, std::abs(alpha), std::abs(beta)})) degenerate = true;
        return {CaseIRoots{alpha, beta, eta}, degenerate};
    }
    if (simple.empty() && !doubles.empty()) {
        throw NoRealRoots("P(kappa) <= 0 everywhere except at a double root; no periodic curvature");
    }
    if (simple.empty()) throw NoRealRoots("P(kappa) < 0 for all kappa; no real-valued curvature");
    // odd count only happens when a root sits exactly on a critical point
    std::vector<double> all = simple;
    for (double d : doubles) all.push_back(d), all.push_back(d);
    std::sort(all.begin(), all.end());
    if (all.size() == 4) return {CaseIIRoots{all[0], all[1], all[2], all[3]}, true};
    throw NoRealRoots("could not classify the roots of P");
}

}  // namespace ringeq
