#pragma once

// Elliptic integrals of the first and third kind and the Jacobi elliptic
// functions, real arguments only. Integrals go through Carlson's symmetric
// forms R_F / R_J (duplication theorem); the amplitude uses the descending
// Landen / AGM recurrence. Every routine accepts an unbounded argument and
// continues it quasi-periodically through the complete integrals.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ringeq/error.hpp"

namespace ringeq::specfun {

/// Modulus k of an elliptic integral, validated to 0 <= k < 1.
///
/// Implicit from double on purpose: every public routine takes a modulus and
/// the check then happens once at the call boundary.
class EllipticModulus {
public:
    EllipticModulus(double k) : k_(k) {  // NOLINT(google-explicit-constructor)
        if (!(k >= 0.0 && k < 1.0)) {
            throw DomainError("elliptic modulus must satisfy 0 <= k < 1, got " + std::to_string(k));
        }
    }

    double k() const noexcept { return k_; }
    double k2() const noexcept { return k_ * k_; }
    /// k'^2 = 1 - k^2 without cancellation near k -> 1.
    double complement2() const noexcept { return (1.0 - k_) * (1.0 + k_); }

private:
    double k_;
};

namespace detail {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double max_abs_dev(double a, double x, double y, double z) {
    return std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)});
}

}  // namespace detail

/// R_C(x, y) for x >= 0, y > 0.
inline double carlson_rc(double x, double y) {
    if (x < 0.0 || y <= 0.0) throw DomainError("carlson_rc requires x >= 0, y > 0");
    if (x == y) return 1.0 / std::sqrt(x);
    if (x < y) return std::acos(std::sqrt(x / y)) / std::sqrt(y - x);
    return std::acosh(std::sqrt(x / y)) / std::sqrt(x - y);
}

/// R_C(1, 1 + e) for e > -1, with a series near e = 0.
inline double carlson_rc1(double e) {
    if (std::abs(e) < 1e-3) {
        // 1 - e/3 + e^2/5 - e^3/7 + e^4/9 - e^5/11
        return 1.0 + e * (-1.0 / 3 + e * (1.0 / 5 + e * (-1.0 / 7 + e * (1.0 / 9 - e / 11))));
    }
    if (e > 0.0) {
        const double r = std::sqrt(e);
        return std::atan(r) / r;
    }
    const double r = std::sqrt(-e);
    return std::atanh(r) / r;
}

/// Carlson's R_F(x, y, z); at most one argument may be zero.
inline double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0) throw DomainError("carlson_rf requires nonnegative arguments");
    if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) throw DomainError("carlson_rf: two zero arguments");

    const double a0 = (x + y + z) / 3.0;
    const double q = std::pow(3.0 * detail::kEps, -1.0 / 6.0) * detail::max_abs_dev(a0, x, y, z);
    double xm = x, ym = y, zm = z, am = a0, f = 1.0;
    while (f * q >= std::abs(am)) {
        const double sx = std::sqrt(xm), sy = std::sqrt(ym), sz = std::sqrt(zm);
        const double lambda = sx * sy + sx * sz + sy * sz;
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        zm = 0.25 * (zm + lambda);
        am = 0.25 * (am + lambda);
        f *= 0.25;
    }
    const double X = (a0 - x) * f / am;
    const double Y = (a0 - y) * f / am;
    const double Z = -X - Y;
    const double e2 = X * Y - Z * Z;
    const double e3 = X * Y * Z;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(am);
}

/// Carlson's R_J(x, y, z, p) for p > 0.
inline double carlson_rj(double x, double y, double z, double p) {
    if (x < 0.0 || y < 0.0 || z < 0.0) throw DomainError("carlson_rj requires nonnegative x, y, z");
    if (p <= 0.0) throw DomainError("carlson_rj requires p > 0 (principal value not supported)");
    if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) throw DomainError("carlson_rj: two zero arguments");

    const double a0 = (x + y + z + 2.0 * p) / 5.0;
    const double delta = (p - x) * (p - y) * (p - z);
    const double q = std::pow(0.25 * detail::kEps, -1.0 / 6.0) *
                     std::max(detail::max_abs_dev(a0, x, y, z), std::abs(a0 - p));
    double xm = x, ym = y, zm = z, pm = p, am = a0, f = 1.0, sum = 0.0;
    while (f * q >= std::abs(am)) {
        const double sx = std::sqrt(xm), sy = std::sqrt(ym), sz = std::sqrt(zm), sp = std::sqrt(pm);
        const double lambda = sx * sy + sx * sz + sy * sz;
        const double d = (sp + sx) * (sp + sy) * (sp + sz);
        const double e = f * f * f * delta / (d * d);
        sum += f * carlson_rc1(e) / d;
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        zm = 0.25 * (zm + lambda);
        pm = 0.25 * (pm + lambda);
        am = 0.25 * (am + lambda);
        f *= 0.25;
    }
    const double X = (a0 - x) * f / am;
    const double Y = (a0 - y) * f / am;
    const double Z = (a0 - z) * f / am;
    const double P = -(X + Y + Z) / 2.0;
    const double e2 = X * Y + X * Z + Y * Z - 3.0 * P * P;
    const double e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P;
    const double e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P;
    const double e5 = X * Y * Z * P * P;
    const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                          9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return f * series / (am * std::sqrt(am)) + 6.0 * sum;
}

/// Complete integral of the first kind K(k).
inline double complete_K(EllipticModulus k) {
    return carlson_rf(0.0, k.complement2(), 1.0);
}

/// Complete integral of the third kind Pi(n, k), characteristic n < 1.
inline double complete_Pi(double n_char, EllipticModulus k) {
    if (!(n_char < 1.0)) throw CharacteristicError("characteristic must be < 1, got " + std::to_string(n_char));
    const double kc2 = k.complement2();
    return carlson_rf(0.0, kc2, 1.0) + n_char / 3.0 * carlson_rj(0.0, kc2, 1.0, 1.0 - n_char);
}

namespace detail {

/// Splits phi = j*pi + r with r in [-pi/2, pi/2].
inline double reduce_half_turns(double phi, double& j) {
    j = std::round(phi / std::numbers::pi);
    return phi - j * std::numbers::pi;
}

}  // namespace detail

/// Incomplete integral of the first kind F(phi, k), any real phi.
inline double incomplete_F(double phi, EllipticModulus k) {
    double j = 0.0;
    const double r = detail::reduce_half_turns(phi, j);
    const double s = std::sin(r), c = std::cos(r);
    const double base = s * carlson_rf(c * c, 1.0 - k.k2() * s * s, 1.0);
    return j == 0.0 ? base : base + 2.0 * j * complete_K(k);
}

/// Incomplete integral of the third kind
/// Pi(n, phi, k) = int_0^phi dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t)), any real phi.
inline double incomplete_Pi(double n_char, double phi, EllipticModulus k) {
    if (!(n_char < 1.0)) throw CharacteristicError("characteristic must be < 1, got " + std::to_string(n_char));
    double j = 0.0;
    const double r = detail::reduce_half_turns(phi, j);
    const double s = std::sin(r), c = std::cos(r);
    const double c2 = c * c, d2 = 1.0 - k.k2() * s * s;
    double base = s * carlson_rf(c2, d2, 1.0);
    if (n_char != 0.0 && s != 0.0) base += n_char / 3.0 * s * s * s * carlson_rj(c2, d2, 1.0, 1.0 - n_char * s * s);
    return j == 0.0 ? base : base + 2.0 * j * complete_Pi(n_char, k);
}

struct JacobiValues {
    double am;
    double sn;
    double cn;
    double dn;
};

/// Amplitude and sn, cn, dn at any real u. The amplitude is the continuous
/// branch: am(u + 2K) = am(u) + pi.
inline JacobiValues jacobi_am_sn_cn_dn(double u, EllipticModulus k) {
    const double kK = complete_K(k);
    const double j = std::round(u / (2.0 * kK));
    const double ur = u - 2.0 * j * kK;

    // descending Landen / AGM
    constexpr int kMaxLevels = 32;
    double a[kMaxLevels + 1], c[kMaxLevels + 1];
    a[0] = 1.0;
    double b = std::sqrt(k.complement2());
    c[0] = k.k();
    int levels = 0;
    while (std::abs(c[levels]) > detail::kEps * a[levels] && levels < kMaxLevels) {
        a[levels + 1] = 0.5 * (a[levels] + b);
        c[levels + 1] = 0.5 * (a[levels] - b);
        b = std::sqrt(a[levels] * b);
        ++levels;
    }
    double phi = std::ldexp(a[levels] * ur, levels);
    for (int i = levels; i > 0; --i) {
        phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
    }

    JacobiValues out{};
    out.am = phi + j * std::numbers::pi;
    out.sn = std::sin(out.am);
    out.cn = std::cos(out.am);
    out.dn = std::sqrt(k.complement2() + k.k2() * out.cn * out.cn);
    return out;
}

}  // namespace ringeq::specfun
