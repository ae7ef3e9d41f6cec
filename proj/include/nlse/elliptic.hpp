#pragma once

// Complete elliptic integral K(p), the incomplete integral F(phi|p) and the
// Jacobi elliptic functions sn, cn, dn.
//
// Everything here takes the *parameter* p in [0, 1], i.e. sn(u|p) with
// sn(u|0) = sin u and sn(u|1) = tanh u. No conversion to the modulus
// k = sqrt(p) is ever done at the interface.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlse {

class EllipticModulus {
public:
    explicit EllipticModulus(double p) : p_(p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::domain_error("elliptic parameter p must lie in [0, 1], got " +
                                    std::to_string(p));
        }
    }

    double value() const noexcept { return p_; }
    double complement() const noexcept { return 1.0 - p_; }

private:
    double p_;
};

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

namespace detail {

inline constexpr int kMaxAgmIterations = 64;
inline constexpr double kAgmTolerance = 1e-15;

/// Carlson's symmetric integral R_F(x, y, z) by duplication.
inline double carlson_rf(double x, double y, double z) {
    static const double tol =
        std::pow(3.0 * std::numeric_limits<double>::epsilon() * 0.01, 1.0 / 8.0);
    const double a0 = (x + y + z) / 3.0;
    double an = a0;
    const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / tol;
    double x0 = x, y0 = y, z0 = z, mul = 1.0;
    while (q >= mul * std::abs(an)) {
        const double lam = std::sqrt(x0) * std::sqrt(y0) + std::sqrt(y0) * std::sqrt(z0) +
                           std::sqrt(z0) * std::sqrt(x0);
        an = (an + lam) / 4.0;
        x0 = (x0 + lam) / 4.0;
        y0 = (y0 + lam) / 4.0;
        z0 = (z0 + lam) / 4.0;
        mul *= 4.0;
    }
    const double xx = (a0 - x) / (mul * an);
    const double yy = (a0 - y) / (mul * an);
    const double zz = -(xx + yy);
    const double e2 = xx * yy - zz * zz;
    const double e3 = xx * yy * zz;
    return (e3 * (6930.0 * e3 + e2 * (15015.0 * e2 - 16380.0) + 17160.0) +
            e2 * ((10010.0 - 5775.0 * e2) * e2 - 24024.0) + 240240.0) /
           (240240.0 * std::sqrt(an));
}

} // namespace detail

/// Complete elliptic integral of the first kind,
///   K(p) = int_0^{pi/2} (1 - p sin^2 t)^{-1/2} dt,
/// via the arithmetic-geometric mean K = pi / (2 agm(1, sqrt(1 - p))).
inline double complete_k(EllipticModulus modulus) {
    const double p = modulus.value();
    if (p >= 1.0) {
        throw std::domain_error("complete_k: K(p) diverges at p = 1");
    }
    double a = 1.0;
    double b = std::sqrt(modulus.complement());
    for (int i = 0; i < detail::kMaxAgmIterations; ++i) {
        if (std::abs(a - b) < detail::kAgmTolerance * a) break;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

inline double complete_k(double p) { return complete_k(EllipticModulus(p)); }

/// sn, cn, dn at real argument u. Uses the descending Landen (Gauss)
/// transformation in Bulirsch's form; the degenerate ends p = 0 and
/// p = 1 are returned in closed form.
inline JacobiTriple jacobi(double u, EllipticModulus modulus) {
    const double p = modulus.value();
    if (!std::isfinite(u)) {
        throw std::domain_error("jacobi: argument must be finite");
    }
    if (p == 0.0) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (p == 1.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }

    constexpr int kDepth = 16;
    std::array<double, kDepth> am{};
    std::array<double, kDepth> bn{};
    double mc = modulus.complement();
    double c = 0.0;
    int levels = 0;
    for (double a = 1.0; levels < kDepth; ++levels) {
        am[levels] = a;
        bn[levels] = mc = std::sqrt(mc);
        c = 0.5 * (a + mc);
        if (!(std::abs(a - mc) > detail::kAgmTolerance * a)) {
            ++levels;
            break;
        }
        mc *= a;
        a = c;
    }

    const double x = u * c;
    double sn = std::sin(x);
    double cn = std::cos(x);
    double dn = 1.0;
    if (sn != 0.0) {
        double a = cn / sn;
        c *= a;
        while (levels-- > 0) {
            const double b = am[levels];
            a *= c;
            c *= dn;
            dn = (bn[levels] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = sn < 0.0 ? -a : a;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

inline JacobiTriple jacobi(double u, double p) { return jacobi(u, EllipticModulus(p)); }

/// Incomplete elliptic integral of the first kind F(phi|p), the inverse
/// of the amplitude: sn(F(phi|p)|p) = sin(phi), cn(F(phi|p)|p) = cos(phi).
/// Valid for any real phi when p < 1 (quasi-periodic continuation), and
/// for |phi| < pi/2 when p = 1.
inline double incomplete_f(double phi, EllipticModulus modulus) {
    const double p = modulus.value();
    if (p == 1.0) {
        if (!(std::abs(phi) < 0.5 * std::numbers::pi)) {
            throw std::domain_error("incomplete_f: |phi| must be < pi/2 at p = 1");
        }
        return std::atanh(std::sin(phi));
    }
    const double turns = std::round(phi / std::numbers::pi);
    const double reduced = phi - turns * std::numbers::pi;
    const double s = std::sin(reduced);
    const double c = std::cos(reduced);
    const double base = s * detail::carlson_rf(c * c, 1.0 - p * s * s, 1.0);
    return turns == 0.0 ? base : base + 2.0 * turns * complete_k(modulus);
}

inline double incomplete_f(double phi, double p) {
    return incomplete_f(phi, EllipticModulus(p));
}

} // namespace nlse
