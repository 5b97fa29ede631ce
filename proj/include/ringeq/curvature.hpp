#pragma once

// Periodic solutions of kappa'^2 = P(kappa) and their slope angles
// phi(s) = int_0^s kappa. Four families:
//   K1  Case I, eta > 0       cn-based, slope angle through Pi(-C, am, k1)
//   K2  Case I, eta = 0       elementary (cos / arctan tan)
//   K3  Case II, on [alpha, beta]
//   K4  Case II, on [gamma, delta]
// Every family starts at a root of P, so kappa'(0) = 0 and phi(0) = 0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <variant>

#include "ringeq/error.hpp"
#include "ringeq/quartic.hpp"
#include "ringeq/specfun.hpp"

namespace ringeq {

struct CurvaturePoint {
    double kappa = 0.0;
    double kappa_prime = 0.0;
    double phi = 0.0;
};

/// Derived quantities of the K1 family.
struct CaseIModuli {
    double A = 0.0;
    double B = 0.0;
    double A_minus_B = 0.0;  ///< evaluated without cancellation
    double lambda1 = 0.0;
    double k1 = 0.0;
    double C = 0.0;
    double T1 = 0.0;  ///< least period (4 / lambda1) K(k1)
};

/// Derived quantities of the K3 / K4 families.
struct CaseIIModuli {
    double lambda2 = 0.0;
    double k2 = 0.0;
    double T2 = 0.0;  ///< least period (2 / lambda2) K(k2)
};

/// A = sqrt(4 eta^2 + (3a + b)^2), B = sqrt(4 eta^2 + (a + 3b)^2),
/// lambda1 = sqrt(AB)/4, C = (A - B)^2 / 4AB.
/// k1^2 = 1/2 - (4 eta^2 + uv)/(2AB) with u = 3a + b, v = a + 3b is
/// rewritten as 2 eta^2 (u - v)^2 / (AB (AB + 4 eta^2 + uv)) when that sum is
/// positive, which keeps k1 accurate near the circle (q -> 0).
inline CaseIModuli case_i_moduli(const CaseIRoots& r) {
    if (!(r.alpha < r.beta)) throw DomainError("Case I requires alpha < beta");
    const double u = 3.0 * r.alpha + r.beta;
    const double v = r.alpha + 3.0 * r.beta;
    const double e2 = 4.0 * r.eta * r.eta;
    CaseIModuli m;
    m.A = std::sqrt(e2 + u * u);
    m.B = std::sqrt(e2 + v * v);
    m.A_minus_B = (u - v) * (u + v) / (m.A + m.B);
    const double ab = m.A * m.B;
    m.lambda1 = 0.25 * std::sqrt(ab);
    const double s = e2 + u * v;
    double k2 = s >= 0.0 ? 0.5 * e2 * (u - v) * (u - v) / (ab * (ab + s)) : 0.5 - s / (2.0 * ab);
    if (r.eta == 0.0) k2 = 0.0;
    m.k1 = std::sqrt(std::clamp(k2, 0.0, 1.0));
    m.C = m.A_minus_B * m.A_minus_B / (4.0 * ab);
    if (m.k1 >= 1.0) throw DegenerateModuli("Case I modulus reached 1");
    m.T1 = 4.0 / m.lambda1 * specfun::complete_K(m.k1);
    return m;
}

/// lambda2 = sqrt((g - a)(d - b))/4, k2 = sqrt((b - a)(d - g) / ((g - a)(d - b))).
inline CaseIIModuli case_ii_moduli(const CaseIIRoots& r) {
    if (!(r.alpha < r.beta && r.beta < r.gamma && r.gamma < r.delta)) {
        throw DomainError("Case II requires alpha < beta < gamma < delta");
    }
    CaseIIModuli m;
    const double ga = r.gamma - r.alpha, db = r.delta - r.beta;
    m.lambda2 = 0.25 * std::sqrt(ga * db);
    m.k2 = std::sqrt((r.beta - r.alpha) * (r.delta - r.gamma) / (ga * db));
    m.T2 = 2.0 / m.lambda2 * specfun::complete_K(m.k2);
    return m;
}

namespace detail {

inline void require_elliptic_case_i(const CaseIModuli& m, const CaseIRoots& r) {
    if (!(r.eta > 0.0)) throw DegenerateModuli("K1 needs eta > 0; use the elementary eta = 0 branch");
    if (std::abs(m.A_minus_B) <= 1e-14 * (m.A + m.B)) throw DegenerateModuli("A = B (alpha + beta = 0)");
}

}  // namespace detail

inline double kappa1(double s, const CaseIModuli& m, const CaseIRoots& r) {
    if (!(r.eta > 0.0)) throw DegenerateModuli("K1 needs eta > 0; use kappa2_phi2");
    const double cn = specfun::jacobi_am_sn_cn_dn(m.lambda1 * s, m.k1).cn;
    const double num = (m.A * r.beta + m.B * r.alpha) - (m.A * r.beta - m.B * r.alpha) * cn;
    const double den = (m.A + m.B) - m.A_minus_B * cn;
    return num / den;
}

/// Chain rule on cn: kappa1' = 2 AB lambda1 (beta - alpha) sn dn / den^2.
inline double kappa1_prime(double s, const CaseIModuli& m, const CaseIRoots& r) {
    if (!(r.eta > 0.0)) throw DegenerateModuli("K1 needs eta > 0; use kappa2_phi2");
    const auto j = specfun::jacobi_am_sn_cn_dn(m.lambda1 * s, m.k1);
    const double den = (m.A + m.B) - m.A_minus_B * j.cn;
    return 2.0 * m.A * m.B * m.lambda1 * (r.beta - r.alpha) * j.sn * j.dn / (den * den);
}

/// Slope angle of K1. sn/dn is bounded (dn >= k1'), so the arctan term is
/// continuous on its own; the Pi term follows the continuous amplitude.
inline double phi1(double s, const CaseIModuli& m, const CaseIRoots& r) {
    detail::require_elliptic_case_i(m, r);
    if (!(m.C >= 0.0)) throw CharacteristicError("characteristic -C must be <= 0");
    const auto j = specfun::jacobi_am_sn_cn_dn(m.lambda1 * s, m.k1);
    const double root = std::sqrt(m.k1 * m.k1 + m.C);
    const double linear = (m.A * r.beta - m.B * r.alpha) / m.A_minus_B * s;
    const double arc = (r.alpha - r.beta) / (2.0 * m.lambda1 * root) * std::atan(root * j.sn / j.dn);
    const double third = (m.A + m.B) * (r.alpha - r.beta) / (2.0 * m.lambda1 * m.A_minus_B) *
                         specfun::incomplete_Pi(-m.C, j.am, m.k1);
    return linear + arc + third;
}

/// K1 at s in one Jacobi evaluation.
inline CurvaturePoint eval_k1(double s, const CaseIModuli& m, const CaseIRoots& r) {
    detail::require_elliptic_case_i(m, r);
    const auto j = specfun::jacobi_am_sn_cn_dn(m.lambda1 * s, m.k1);
    const double den = (m.A + m.B) - m.A_minus_B * j.cn;
    CurvaturePoint p;
    p.kappa = ((m.A * r.beta + m.B * r.alpha) - (m.A * r.beta - m.B * r.alpha) * j.cn) / den;
    p.kappa_prime = 2.0 * m.A * m.B * m.lambda1 * (r.beta - r.alpha) * j.sn * j.dn / (den * den);
    const double root = std::sqrt(m.k1 * m.k1 + m.C);
    p.phi = (m.A * r.beta - m.B * r.alpha) / m.A_minus_B * s +
            (r.alpha - r.beta) / (2.0 * m.lambda1 * root) * std::atan(root * j.sn / j.dn) +
            (m.A + m.B) * (r.alpha - r.beta) / (2.0 * m.lambda1 * m.A_minus_B) *
                specfun::incomplete_Pi(-m.C, j.am, m.k1);
    return p;
}

/// Elementary eta = 0 branch. The arctan(sqrt(A/B) tan(theta/2)) term gains
/// pi at every theta = pi (mod 2 pi) to stay continuous.
inline CurvaturePoint kappa2_phi2(double s, const CaseIRoots& r) {
    if (r.eta != 0.0) throw DomainError("kappa2_phi2 is the eta = 0 branch");
    const double u = 3.0 * r.alpha + r.beta, v = r.alpha + 3.0 * r.beta;
    if (!(u * v > 0.0)) throw NonPeriodic("(3 alpha + beta)(alpha + 3 beta) <= 0: no periodic solution");
    const double A = std::abs(u), B = std::abs(v);
    const double AmB = (u - v) * (u + v) / (A + B);
    if (std::abs(AmB) <= 1e-14 * (A + B)) throw DegenerateModuli("A = B");
    const double lambda = 0.25 * std::sqrt(A * B);
    const double theta = lambda * s;
    const double c = std::cos(theta), sn = std::sin(theta);
    const double den = (A + B) - AmB * c;
    CurvaturePoint p;
    p.kappa = ((A * r.beta + B * r.alpha) - (A * r.beta - B * r.alpha) * c) / den;
    p.kappa_prime = 2.0 * A * B * lambda * (r.beta - r.alpha) * sn / (den * den);
    const double turns = std::round(theta / (2.0 * std::numbers::pi));
    const double half = 0.5 * (theta - 2.0 * std::numbers::pi * turns);
    p.phi = (A * r.beta - B * r.alpha) / AmB * s +
            8.0 * (r.alpha - r.beta) / AmB * (std::atan(std::sqrt(A / B) * std::tan(half)) + std::numbers::pi * turns);
    return p;
}

/// kappa3 = delta - (d - a)(d - b) / ((d - b) + (b - a) sn^2), on [alpha, beta].
inline CurvaturePoint kappa3_phi3(double s, const CaseIIRoots& r, const CaseIIModuli& m) {
    const auto j = specfun::jacobi_am_sn_cn_dn(m.lambda2 * s, m.k2);
    const double da = r.delta - r.alpha, db = r.delta - r.beta, ba = r.beta - r.alpha;
    const double den = db + ba * j.sn * j.sn;
    CurvaturePoint p;
    p.kappa = r.delta - da * db / den;
    p.kappa_prime = da * db * ba * 2.0 * m.lambda2 * j.sn * j.cn * j.dn / (den * den);
    p.phi = r.delta * s - da / m.lambda2 * specfun::incomplete_Pi(ba / (r.beta - r.delta), j.am, m.k2);
    return p;
}

/// kappa4 = beta + (g - b)(d - b) / ((d - b) - (d - g) sn^2), on [gamma, delta].
inline CurvaturePoint kappa4_phi4(double s, const CaseIIRoots& r, const CaseIIModuli& m) {
    const auto j = specfun::jacobi_am_sn_cn_dn(m.lambda2 * s, m.k2);
    const double gb = r.gamma - r.beta, db = r.delta - r.beta, dg = r.delta - r.gamma;
    const double den = db - dg * j.sn * j.sn;
    CurvaturePoint p;
    p.kappa = r.beta + gb * db / den;
    p.kappa_prime = gb * db * dg * 2.0 * m.lambda2 * j.sn * j.cn * j.dn / (den * den);
    p.phi = r.beta * s - (r.beta - r.gamma) / m.lambda2 * specfun::incomplete_Pi(dg / db, j.am, m.k2);
    return p;
}

enum class Family { K1, K2, K3, K4, Circle };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::K1: return "K1";
        case Family::K2: return "K2";
        case Family::K3: return "K3";
        case Family::K4: return "K4";
        case Family::Circle: return "circle";
    }
    return "?";
}

/// One periodic solution of the first integral: family, roots, coefficients
/// and moduli, evaluated pointwise by at(s).
class CurvatureSolution {
public:
    /// K1 for eta > 0, K2 for eta = 0.
    static CurvatureSolution case_i(const CaseIRoots& r) {
        CurvatureSolution sol;
        sol.roots_ = r;
        sol.params_ = params_from_roots(r);
        if (r.eta > 0.0) {
            sol.family_ = Family::K1;
            const auto m = ringeq::case_i_moduli(r);
            detail::require_elliptic_case_i(m, r);
            sol.moduli_ = m;
            sol.period_ = m.T1;
        } else {
            sol.family_ = Family::K2;
            const double u = 3.0 * r.alpha + r.beta, v = r.alpha + 3.0 * r.beta;
            if (!(u * v > 0.0)) throw NonPeriodic("(3 alpha + beta)(alpha + 3 beta) <= 0: no periodic solution");
            sol.period_ = 2.0 * std::numbers::pi / (0.25 * std::sqrt(std::abs(u * v)));
        }
        return sol;
    }

    static CurvatureSolution case_ii(const CaseIIRoots& r, Family f) {
        if (f != Family::K3 && f != Family::K4) throw DomainError("Case II families are K3 and K4");
        CurvatureSolution sol;
        sol.family_ = f;
        sol.roots_ = r;
        sol.params_ = params_from_roots(r);
        const auto m = ringeq::case_ii_moduli(r);
        sol.moduli_ = m;
        sol.period_ = m.T2;
        return sol;
    }

    /// Constant curvature kappa0 at pressure sigma: P has a double root at kappa0.
    static CurvatureSolution circle(double kappa0, double sigma) {
        if (kappa0 == 0.0) throw DomainError("circle needs nonzero curvature");
        CurvatureSolution sol;
        sol.family_ = Family::Circle;
        sol.kappa0_ = kappa0;
        sol.params_.sigma = sigma;
        sol.params_.mu = 0.5 * kappa0 * kappa0 - sigma / kappa0;
        sol.params_.epsilon = 0.25 * kappa0 * kappa0 * kappa0 * kappa0 - sol.params_.mu * kappa0 * kappa0 - 2.0 * sigma * kappa0;
        sol.period_ = 2.0 * std::numbers::pi / std::abs(kappa0);
        return sol;
    }

    CurvaturePoint at(double s) const {
        switch (family_) {
            case Family::K1:
                return eval_k1(s, std::get<CaseIModuli>(moduli_), std::get<CaseIRoots>(*roots_));
            case Family::K2:
                return kappa2_phi2(s, std::get<CaseIRoots>(*roots_));
            case Family::K3:
                return kappa3_phi3(s, std::get<CaseIIRoots>(*roots_), std::get<CaseIIModuli>(moduli_));
            case Family::K4:
                return kappa4_phi4(s, std::get<CaseIIRoots>(*roots_), std::get<CaseIIModuli>(moduli_));
            case Family::Circle:
                return {kappa0_, 0.0, kappa0_ * s};
        }
        return {};
    }

    /// The same solution under (s, kappa; mu, sigma, eps) -> (s/l, l kappa; l^2 mu, l^3 sigma, l^4 eps).
    CurvatureSolution scaled(double lambda) const {
        if (!(lambda > 0.0)) throw DomainError("similarity factor must be positive");
        if (family_ == Family::Circle) return circle(lambda * kappa0_, lambda * lambda * lambda * params_.sigma);
        const RootSet r = scale_roots(*roots_, lambda);
        if (family_ == Family::K1 || family_ == Family::K2) return case_i(std::get<CaseIRoots>(r));
        return case_ii(std::get<CaseIIRoots>(r), family_);
    }

    Family family() const noexcept { return family_; }
    double period() const noexcept { return period_; }
    const PolyParams& params() const noexcept { return params_; }
    const std::optional<RootSet>& roots() const noexcept { return roots_; }

    const CaseIModuli* case_i_moduli() const { return std::get_if<CaseIModuli>(&moduli_); }
    const CaseIIModuli* case_ii_moduli() const { return std::get_if<CaseIIModuli>(&moduli_); }

private:
    Family family_ = Family::Circle;
    std::optional<RootSet> roots_;
    PolyParams params_;
    std::variant<std::monostate, CaseIModuli, CaseIIModuli> moduli_;
    double period_ = 0.0;
    double kappa0_ = 0.0;
};

/// kappa'' + kappa^3/2 - mu kappa - sigma with kappa'' from 4th-order central
/// differences, step 1e-4 of the period.
inline double ode_residual(const CurvatureSolution& sol, double s) {
    const double h = 1e-4 * sol.period();
    const auto k = [&sol](double t) { return sol.at(t).kappa; };
    const double d2 = (-k(s + 2 * h) + 16.0 * k(s + h) - 30.0 * k(s) + 16.0 * k(s - h) - k(s - 2 * h)) / (12.0 * h * h);
    const double kap = k(s);
    const auto& p = sol.params();
    return d2 + 0.5 * kap * kap * kap - p.mu * kap - p.sigma;
}

/// kappa'^2 - P(kappa) at s.
inline double first_integral_residual(const CurvatureSolution& sol, double s) {
    const auto c = sol.at(s);
    return c.kappa_prime * c.kappa_prime - eval_P(c.kappa, sol.params());
}

}  // namespace ringeq
