#pragma once

// Small root-finding kernels shared by the solvers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace ringeq::numeric {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
double max_abs(const Vec<N>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Solves J x = b by Gaussian elimination with partial pivoting; nullopt if singular.
template <std::size_t N>
std::optional<Vec<N>> solve_linear(std::array<Vec<N>, N> J, Vec<N> b) {
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < N; ++r) {
            if (std::abs(J[r][c]) > std::abs(J[piv][c])) piv = r;
        }
        if (!(std::abs(J[piv][c]) > 0.0) || !std::isfinite(J[piv][c])) return std::nullopt;
        std::swap(J[c], J[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < N; ++r) {
            const double f = J[r][c] / J[c][c];
            for (std::size_t k = c; k < N; ++k) J[r][k] -= f * J[c][k];
            b[r] -= f * b[c];
        }
    }
    Vec<N> x{};
    for (std::size_t i = N; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < N; ++k) s -= J[i][k] * x[k];
        x[i] = s / J[i][i];
    }
    return x;
}

template <std::size_t N>
struct NewtonResult {
    Vec<N> x{};
    Vec<N> f{};
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

/// Damped Newton with a central finite-difference Jacobian (relative step
/// 1e-7). F returns nullopt outside its domain; steps are halved until F is
/// defined and the max-norm residual decreases.
template <std::size_t N>
NewtonResult<N> newton_fd(const std::function<std::optional<Vec<N>>(const Vec<N>&)>& F, Vec<N> x, double tol,
                          int max_iterations) {
    NewtonResult<N> res;
    auto fx = F(x);
    if (!fx) return res;
    res.x = x;
    res.f = *fx;
    res.residual = max_abs(*fx);
    for (int it = 0; it < max_iterations; ++it) {
        if (res.residual <= tol) {
            res.converged = true;
            return res;
        }
        std::array<Vec<N>, N> J{};
        bool ok = true;
        for (std::size_t c = 0; c < N && ok; ++c) {
            const double h = 1e-7 * std::max(std::abs(x[c]), 1e-3);
            Vec<N> xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            const auto fp = F(xp), fm = F(xm);
            if (!fp || !fm) {
                ok = false;
                break;
            }
            for (std::size_t r = 0; r < N; ++r) J[r][c] = ((*fp)[r] - (*fm)[r]) / (2.0 * h);
        }
        if (!ok) return res;
        Vec<N> rhs;
        for (std::size_t r = 0; r < N; ++r) rhs[r] = -res.f[r];
        const auto dx = solve_linear<N>(J, rhs);
        if (!dx) return res;

        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            Vec<N> xn = x;
            for (std::size_t c = 0; c < N; ++c) xn[c] += t * (*dx)[c];
            const auto fn = F(xn);
            if (!fn) continue;
            const double rn = max_abs(*fn);
            if (rn < res.residual) {
                x = xn;
                res.x = xn;
                res.f = *fn;
                res.residual = rn;
                accepted = true;
                break;
            }
        }
        res.iterations = it + 1;
        if (!accepted) return res;
    }
    res.converged = res.residual <= tol;
    return res;
}

/// Brent's method on [a, b] with f(a) f(b) <= 0.
inline std::optional<double> brent(const std::function<double(double)>& f, double a, double b, double xtol,
                                   int max_iterations = 200) {
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0)) {
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        return std::nullopt;
    }
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iterations; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b, b = c, c = a;
            fa = fb, fb = fc, fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if (!std::isfinite(fb)) return std::nullopt;
    }
    return b;
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_m).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int m) {
    GaussRule g;
    g.nodes.resize(m);
    g.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.nodes[m - 1 - i] = x;
        g.weights[i] = g.weights[m - 1 - i] = w;
    }
    return g;
}

}  // namespace ringeq::numeric
