#pragma once

// Closed equilibrium shapes of mode n: the closure/length system in (eta, q)
// at fixed pressure, and the contact system that also fixes the pressure at
// which the shape first touches itself.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringeq/curvature.hpp"
#include "ringeq/error.hpp"
#include "ringeq/numeric.hpp"
#include "ringeq/quartic.hpp"
#include "ringeq/specfun.hpp"

namespace ringeq {

/// n^2 - 1; below it only the circle is an equilibrium of mode n.
inline double buckling_pressure(int n) {
    if (n < 2) throw DomainError("mode number must be >= 2");
    return static_cast<double>(n) * n - 1.0;
}

struct ClosureResiduals {
    double closure = 0.0;  ///< half the slope-angle gain over half a period, minus +-pi/(2n)
    double length = 0.0;   ///< a quarter period minus pi/(2n)
};

/// Roots for the shape parameters (sigma, eta, q) with eta allowed to be
/// signed: alpha = 4 sigma/(eta^2 + q^2) - q, beta = alpha + 2q, and the
/// remaining pair is -(alpha + beta)/2 +- i eta for eta >= 0 or the real
/// roots -(alpha + beta)/2 +- |eta| for eta < 0. The negative side continues
/// the closed shapes past the pressure where the complex pair meets the
/// real axis.
inline RootSet roots_for_signed_eta(double sigma, double eta, double q) {
    if (!(sigma > 0.0 && q > 0.0)) throw DomainError("sigma and q must be positive");
    const double m = 4.0 * sigma / (eta * std::abs(eta) + q * q);
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("eta^2 + q^2 must be positive");
    const double alpha = m - q, beta = m + q;
    if (eta >= 0.0) return CaseIRoots{alpha, beta, eta};
    const double c = -0.5 * (alpha + beta), e = -eta;
    if (c + e < alpha) return CaseIIRoots{c - e, c + e, alpha, beta};
    if (c - e > beta) return CaseIIRoots{alpha, beta, c - e, c + e};
    throw NonPeriodic("the split root pair overlaps [alpha, beta]: no periodic curvature");
}

/// The periodic curvature oscillating on [alpha, beta] for the signed
/// parameters: K1 (eta > 0), K2 (eta = 0), K4 or K3 (eta < 0).
inline CurvatureSolution equilibrium_curve(double sigma, double eta, double q) {
    const RootSet r = roots_for_signed_eta(sigma, eta, q);
    if (const auto* c1 = std::get_if<CaseIRoots>(&r)) return CurvatureSolution::case_i(*c1);
    const auto& c2 = std::get<CaseIIRoots>(r);
    const double alpha = 4.0 * sigma / (eta * std::abs(eta) + q * q) - q;
    return CurvatureSolution::case_ii(c2, c2.gamma == alpha ? Family::K4 : Family::K3);
}

/// Residuals of the closure and length equations at (eta, q). For eta > 0
///   f1 = (A+B)(a-b)/(2 l (A-B)) Pi(-C, k) + (A b - B a)/(l (A-B)) K(k) -+ pi/(2n)
///   f2 = K(k)/l - pi/(2n)
/// and for eta <= 0 the same two quantities, phi(T/2)/2 -+ pi/(2n) and
/// T/4 - pi/(2n), from the Case II (or elementary) curve.
inline ClosureResiduals closure_residuals(double eta, double q, int n, double sigma, int sign) {
    if (n < 1) throw DomainError("mode number must be positive");
    if (sign != 1 && sign != -1) throw DomainError("rotation sign must be +1 or -1");
    const double target = std::numbers::pi / (2.0 * n);
    ClosureResiduals f;
    if (eta <= 0.0) {
        const auto sol = equilibrium_curve(sigma, eta, q);
        f.closure = 0.5 * sol.at(0.5 * sol.period()).phi - sign * target;
        f.length = 0.25 * sol.period() - target;
        return f;
    }
    const auto r = roots_from_sigma_eta_q(sigma, eta, q);
    const auto m = case_i_moduli(r);
    detail::require_elliptic_case_i(m, r);
    const double K = specfun::complete_K(m.k1);
    const double Pi = specfun::complete_Pi(-m.C, m.k1);
    f.closure = (m.A + m.B) * (r.alpha - r.beta) / (2.0 * m.lambda1 * m.A_minus_B) * Pi +
                (m.A * r.beta - m.B * r.alpha) / (m.lambda1 * m.A_minus_B) * K - sign * target;
    f.length = K / m.lambda1 - target;
    return f;
}

/// A closed equilibrium of mode n. eta is signed as in roots_for_signed_eta;
/// contact analysis needs eta > 0.
struct EquilibriumState {
    int n = 0;
    double sigma = 0.0;
    double eta = 0.0;
    double q = 0.0;
    int rotation_sign = 1;
    Family family = Family::K1;
    RootSet roots;
    PolyParams params;
    std::optional<CaseIModuli> moduli;  ///< K1 only
    ClosureResiduals residuals;
    int iterations = 0;  ///< refinement steps of the final Newton run

    CurvatureSolution solution() const { return equilibrium_curve(sigma, eta, q); }
    double period() const { return solution().period(); }

    const CaseIRoots& case_i_roots() const {
        if (!moduli) throw DomainError("state is not in the K1 family");
        return std::get<CaseIRoots>(roots);
    }
    const CaseIModuli& case_i_moduli() const {
        if (!moduli) throw DomainError("state is not in the K1 family");
        return *moduli;
    }
};

struct EquilibriumOptions {
    double tol = 1e-10;
    int max_iterations = 100;
    std::optional<std::pair<double, double>> initial_guess;  ///< (eta, q)
    std::optional<int> sign;                                 ///< restrict to one closure branch
    int scan_cells = 40;
};

namespace detail {

inline std::optional<numeric::Vec<2>> closure_vec(double eta, double q, int n, double sigma, int sign) {
    if (!(q > 0.0)) return std::nullopt;
    try {
        const auto f = closure_residuals(eta, q, n, sigma, sign);
        if (!std::isfinite(f.closure) || !std::isfinite(f.length)) return std::nullopt;
        return numeric::Vec<2>{f.closure, f.length};
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

inline EquilibriumState make_state(int n, double sigma, double eta, double q, int sign, int iterations) {
    EquilibriumState st;
    st.n = n;
    st.sigma = sigma;
    st.eta = eta;
    st.q = q;
    st.rotation_sign = sign;
    st.roots = roots_for_signed_eta(sigma, eta, q);
    st.params = params_from_roots(st.roots);
    st.family = equilibrium_curve(sigma, eta, q).family();
    if (st.family == Family::K1) st.moduli = ringeq::case_i_moduli(std::get<CaseIRoots>(st.roots));
    st.residuals = closure_residuals(eta, q, n, sigma, sign);
    st.iterations = iterations;
    return st;
}

/// Coarse scan of [1e-3, hi]^2 (then [-hi, hi] x [1e-3, hi]) for cells where
/// both residuals change sign, then Newton from each cell centre,
/// best-looking cells first.
inline std::optional<numeric::NewtonResult<2>> scan_and_refine(int n, double sigma, int sign,
                                                              const EquilibriumOptions& opt, double& best) {
    const std::function<std::optional<numeric::Vec<2>>(const numeric::Vec<2>&)> F =
        [&](const numeric::Vec<2>& x) { return closure_vec(x[0], x[1], n, sigma, sign); };
    const int G = std::max(opt.scan_cells, 4);
    for (int pass = 0; pass < 8; ++pass) {
        const double hi = 2.0 * std::sqrt(sigma) * std::ldexp(1.0, pass % 4);
        const double lo = 1e-3;
        const double h = (hi - lo) / G;
        const double elo = pass < 4 ? lo : -hi;
        const double he = (hi - elo) / G;
        std::vector<std::optional<numeric::Vec<2>>> grid((G + 1) * (G + 1));
        for (int i = 0; i <= G; ++i) {
            for (int j = 0; j <= G; ++j) grid[i * (G + 1) + j] = closure_vec(elo + i * he, lo + j * h, n, sigma, sign);
        }
        struct Cell {
            double score;
            double eta, q;
        };
        std::vector<Cell> cells;
        for (int i = 0; i < G; ++i) {
            for (int j = 0; j < G; ++j) {
                const std::array<int, 4> idx{i * (G + 1) + j, (i + 1) * (G + 1) + j, i * (G + 1) + j + 1,
                                             (i + 1) * (G + 1) + j + 1};
                bool ok = true;
                bool pos[2] = {false, false}, neg[2] = {false, false};
                double score = 0.0;
                for (int c : idx) {
                    if (!grid[c]) {
                        ok = false;
                        break;
                    }
                    for (int e = 0; e < 2; ++e) {
                        const double v = (*grid[c])[e];
                        (v > 0.0 ? pos[e] : neg[e]) = true;
                        score += std::abs(v);
                    }
                }
                if (ok && pos[0] && neg[0] && pos[1] && neg[1]) cells.push_back({score, elo + (i + 0.5) * he, lo + (j + 0.5) * h});
            }
        }
        std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.score < b.score; });
        for (std::size_t c = 0; c < std::min<std::size_t>(cells.size(), 12); ++c) {
            auto res = numeric::newton_fd<2>(F, {cells[c].eta, cells[c].q}, opt.tol, opt.max_iterations);
            best = std::min(best, res.residual);
            if (res.converged) return res;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Solves the closure and length equations for (eta, q). The + branch is
/// tried first, then the - branch, unless opt.sign pins one of them.
inline EquilibriumState solve_equilibrium(int n, double sigma, const EquilibriumOptions& opt = {}) {
    const double sigma_b = buckling_pressure(n);
    if (!(sigma > sigma_b)) {
        throw BelowBuckling("sigma = " + std::to_string(sigma) + " <= buckling pressure " + std::to_string(sigma_b) +
                            " of mode " + std::to_string(n) + ": only the circle exists");
    }
    std::vector<int> signs = opt.sign ? std::vector<int>{*opt.sign} : std::vector<int>{1, -1};
    double best = std::numeric_limits<double>::infinity();
    for (int sign : signs) {
        const std::function<std::optional<numeric::Vec<2>>(const numeric::Vec<2>&)> F =
            [&](const numeric::Vec<2>& x) { return detail::closure_vec(x[0], x[1], n, sigma, sign); };
        if (opt.initial_guess) {
            auto res = numeric::newton_fd<2>(F, {opt.initial_guess->first, opt.initial_guess->second}, opt.tol,
                                             opt.max_iterations);
            best = std::min(best, res.residual);
            if (res.converged) return detail::make_state(n, sigma, res.x[0], res.x[1], sign, res.iterations);
        }
        if (auto res = detail::scan_and_refine(n, sigma, sign, opt, best)) {
            return detail::make_state(n, sigma, res->x[0], res->x[1], sign, res->iterations);
        }
    }
    throw NoConvergence("closure/length system for n = " + std::to_string(n) + ", sigma = " + std::to_string(sigma) +
                            " did not converge (best max residual " + std::to_string(best) + ")",
                        best);
}

struct ContactArclengths {
    double s1_minus = 0.0;  ///< kappa1 = -sqrt(2 mu)
    double s1_plus = 0.0;   ///< kappa1 = +sqrt(2 mu)
};

/// Arclengths on [0, T1/2] where kappa1^2 = 2 mu, i.e. where the tangential
/// force vanishes and contact can occur.
inline ContactArclengths contact_arclengths(const CaseIRoots& r, const CaseIModuli& m, const PolyParams& p) {
    if (!(p.mu > 0.0)) throw NoContactCandidates("mu <= 0: kappa^2 = 2 mu has no solution");
    const double w = std::sqrt(2.0 * p.mu);
    const double slack = 1e-8 * std::max({1.0, std::abs(r.alpha), std::abs(r.beta)});
    if (r.alpha > -w + slack || r.beta < w - slack) {
        throw NoContactCandidates("curvature range [alpha, beta] does not contain +-sqrt(2 mu)");
    }
    const double a0 = m.A * r.beta + m.B * r.alpha, a1 = m.A * r.beta - m.B * r.alpha;
    const double b0 = m.A + m.B, b1 = m.A_minus_B;
    const auto at = [&](double c) {
        return specfun::incomplete_F(std::acos(std::clamp(c, -1.0, 1.0)), m.k1) / m.lambda1;
    };
    return {at((a0 + w * b0) / (a1 + w * b1)), at((a0 - w * b0) / (a1 - w * b1))};
}

inline ContactArclengths contact_arclengths(const EquilibriumState& st) {
    if (!st.moduli) throw NoContactCandidates("contact analysis needs a K1 state (eta > 0)");
    return contact_arclengths(st.case_i_roots(), st.case_i_moduli(), st.params);
}

struct ContactSolution {
    int n = 0;
    double sigma_cn = 0.0;
    double eta = 0.0;
    double q = 0.0;
    double s1_minus = 0.0;
    double s1_plus = 0.0;
    std::array<double, 3> residuals{};  ///< closure, length, contact condition
    /// n = 2 only: the generic contact condition phi1(s1-) = pi/n - pi/2
    /// evaluated at the algebraic solution.
    double generic_contact_residual = 0.0;
    int iterations = 0;
    EquilibriumState state;
};

struct ContactOptions {
    double tol = 1e-9;
    double equilibrium_tol = 1e-10;
};

namespace detail {

/// Contact condition at an equilibrium: sigma - (eta^2 + q^2)^2/(16 q) for
/// n = 2, phi1(s1-) - (pi/n - pi/2) otherwise.
inline double contact_condition(const EquilibriumState& st) {
    if (st.n == 2) {
        const double e2q2 = st.eta * st.eta + st.q * st.q;
        return st.sigma - e2q2 * e2q2 / (16.0 * st.q);
    }
    const auto c = contact_arclengths(st);
    return phi1(c.s1_minus, st.case_i_moduli(), st.case_i_roots()) - (std::numbers::pi / st.n - std::numbers::pi / 2.0);
}

inline double generic_contact_condition(const EquilibriumState& st) {
    const auto c = contact_arclengths(st);
    return phi1(c.s1_minus, st.case_i_moduli(), st.case_i_roots()) - (std::numbers::pi / st.n - std::numbers::pi / 2.0);
}

/// Alternative condition phi1(s1+) = -pi/2.
inline double alternative_condition(const EquilibriumState& st) {
    const auto c = contact_arclengths(st);
    return phi1(c.s1_plus, st.case_i_moduli(), st.case_i_roots()) + std::numbers::pi / 2.0;
}

struct MarchPoint {
    double sigma;
    std::optional<EquilibriumState> state;
    std::optional<double> value;
};

/// Equilibria of mode n (+ branch) at sigma_b (1 + 0.01 growth^k), warm
/// started one from the next, with the given condition evaluated where it
/// is defined. Calls visit(point) and stops when it returns true.
template <class Condition, class Visit>
void march_sigma(int n, double equilibrium_tol, double max_ratio, double growth, Condition&& cond, Visit&& visit) {
    const double sb = buckling_pressure(n);
    std::optional<std::pair<double, double>> guess;
    for (int k = 0;; ++k) {
        const double excess = 0.01 * std::pow(growth, k);
        if (excess > max_ratio) break;
        MarchPoint pt{sb * (1.0 + excess), std::nullopt, std::nullopt};
        EquilibriumOptions eo;
        eo.tol = equilibrium_tol;
        eo.sign = 1;
        eo.initial_guess = guess;
        try {
            pt.state = solve_equilibrium(n, pt.sigma, eo);
            guess = std::make_pair(pt.state->eta, pt.state->q);
            try {
                pt.value = cond(*pt.state);
            } catch (const DomainError&) {
            }
        } catch (const Error&) {
        }
        if (visit(pt)) return;
    }
}

}  // namespace detail

/// Pressure at which the mode-n equilibrium first touches itself.
inline ContactSolution solve_contact_pressure(int n, const ContactOptions& opt = {}) {
    if (n < 2) throw DomainError("mode number must be >= 2");
    std::optional<detail::MarchPoint> lo, hi;
    detail::march_sigma(n, opt.equilibrium_tol, 200.0, 1.15, detail::contact_condition, [&](const detail::MarchPoint& pt) {
        if (!pt.value) return false;
        if (lo && (*lo->value > 0.0) != (*pt.value > 0.0)) {
            hi = pt;
            return true;
        }
        lo = pt;
        return false;
    });
    if (!lo || !hi) throw NoConvergence("no sign change of the contact condition for n = " + std::to_string(n), 1.0);

    std::pair<double, double> guess{lo->state->eta, lo->state->q};
    const std::function<double(double)> g = [&](double sigma) {
        EquilibriumOptions eo;
        eo.tol = opt.equilibrium_tol;
        eo.sign = 1;
        eo.initial_guess = guess;
        try {
            const auto st = solve_equilibrium(n, sigma, eo);
            guess = {st.eta, st.q};
            return detail::contact_condition(st);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const auto root = numeric::brent(g, lo->sigma, hi->sigma, 1e-13 * hi->sigma);
    if (!root) throw NoConvergence("bracketed contact root lost for n = " + std::to_string(n), 1.0);

    EquilibriumOptions eo;
    eo.tol = opt.equilibrium_tol;
    eo.sign = 1;
    eo.initial_guess = guess;
    const auto st0 = solve_equilibrium(n, *root, eo);

    // polish all three unknowns together
    const std::function<std::optional<numeric::Vec<3>>(const numeric::Vec<3>&)> F =
        [n](const numeric::Vec<3>& x) -> std::optional<numeric::Vec<3>> {
        if (!(x[0] > buckling_pressure(n) && x[1] > 0.0 && x[2] > 0.0)) return std::nullopt;
        try {
            const auto f = closure_residuals(x[1], x[2], n, x[0], 1);
            EquilibriumState st = detail::make_state(n, x[0], x[1], x[2], 1, 0);
            return numeric::Vec<3>{f.closure, f.length, detail::contact_condition(st)};
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };
    const double polish_tol = std::min(opt.tol, 1e-12);
    auto res = numeric::newton_fd<3>(F, {*root, st0.eta, st0.q}, polish_tol, 100);
    numeric::Vec<3> x{*root, st0.eta, st0.q};
    numeric::Vec<3> f{st0.residuals.closure, st0.residuals.length, detail::contact_condition(st0)};
    if (res.residual < numeric::max_abs(f)) {
        x = res.x;
        f = res.f;
    }
    if (!(numeric::max_abs(f) <= opt.tol)) {
        throw NoConvergence("contact system for n = " + std::to_string(n) + " stalled at residual " +
                                std::to_string(numeric::max_abs(f)),
                            numeric::max_abs(f));
    }

    ContactSolution sol;
    sol.n = n;
    sol.state = detail::make_state(n, x[0], x[1], x[2], 1, res.iterations);
    sol.sigma_cn = x[0];
    sol.eta = x[1];
    sol.q = x[2];
    sol.residuals = f;
    sol.iterations = res.iterations;
    const auto c = contact_arclengths(sol.state);
    sol.s1_minus = c.s1_minus;
    sol.s1_plus = c.s1_plus;
    if (n == 2) sol.generic_contact_residual = detail::generic_contact_condition(sol.state);
    return sol;
}

/// Outcome of the search for a root of the alternative contact system
/// phi1(s1+) = -pi/2 together with closure and length.
struct AlternativeSystemReport {
    int n = 0;
    bool root_found = false;
    int samples = 0;        ///< equilibria visited
    int valid_samples = 0;  ///< of those, with both contact candidates defined
    int sign_changes = 0;   ///< between consecutive valid samples
    double min_abs_residual = std::numeric_limits<double>::infinity();
    double sigma_at_min = 0.0;
    double sigma_max = 0.0;  ///< upper end of the sweep
    std::string note;
};

/// Sweeps sigma from just above buckling to sigma_b (1 + max_excess) and
/// looks for a sign change of phi1(s1+) + pi/2 where both candidates exist;
/// a bracketed change is refined and accepted only if it stays in the valid
/// region with all residuals below tol.
inline AlternativeSystemReport attempt_alternative_contact(int n, double max_excess = 10.0, double tol = 1e-9) {
    AlternativeSystemReport rep;
    rep.n = n;
    rep.sigma_max = buckling_pressure(n) * (1.0 + max_excess);
    std::optional<detail::MarchPoint> prev;
    std::vector<std::pair<detail::MarchPoint, detail::MarchPoint>> brackets;
    detail::march_sigma(n, 1e-10, max_excess, 1.02, detail::alternative_condition, [&](const detail::MarchPoint& pt) {
        ++rep.samples;
        if (!pt.value) {
            prev.reset();
            return false;
        }
        ++rep.valid_samples;
        if (std::abs(*pt.value) < rep.min_abs_residual) {
            rep.min_abs_residual = std::abs(*pt.value);
            rep.sigma_at_min = pt.sigma;
        }
        if (prev && (*prev->value > 0.0) != (*pt.value > 0.0)) {
            ++rep.sign_changes;
            brackets.emplace_back(*prev, pt);
        }
        prev = pt;
        return false;
    });
    for (const auto& [a, b] : brackets) {
        std::pair<double, double> guess{a.state->eta, a.state->q};
        bool left_region = false;
        const std::function<double(double)> g = [&](double sigma) {
            EquilibriumOptions eo;
            eo.sign = 1;
            eo.initial_guess = guess;
            try {
                const auto st = solve_equilibrium(n, sigma, eo);
                guess = {st.eta, st.q};
                return detail::alternative_condition(st);
            } catch (const Error&) {
                left_region = true;
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        const auto root = numeric::brent(g, a.sigma, b.sigma, 1e-13 * b.sigma);
        if (root && !left_region && std::abs(g(*root)) <= tol) {
            rep.root_found = true;
            rep.min_abs_residual = std::abs(g(*root));
            rep.sigma_at_min = *root;
        }
    }
    if (rep.root_found) {
        rep.note = "root found";
    } else if (rep.valid_samples == 0) {
        rep.note = "no root: contact candidates never both exist";
    } else if (rep.sign_changes == 0) {
        rep.note = "no root: condition keeps one sign wherever both contact candidates exist";
    } else {
        rep.note = "no root: bracketed sign changes do not refine to a valid solution";
    }
    return rep;
}

}  // namespace ringeq
