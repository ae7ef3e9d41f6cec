#pragma once

// Scalar root finding used by the solvers: Brent's bracketed method, a
// sign-change scanner and a damped complex Newton iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace nlse {

struct Bracket {
    double lo;
    double hi;
};

/// Brent's method on [lo, hi]. f(lo) and f(hi) must differ in sign (a zero
/// at either end is accepted). Terminates when the bracket is narrower
/// than xtol + 4 eps |x| or f vanishes exactly.
template <class F>
double brent_root(F&& f, double lo, double hi, double xtol = 1e-14, int max_iter = 300) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NonConvergence("brent_root: no sign change on [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]",
                             {lo, fa, hi, fb});
    }
    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr double eps = 2.220446049250313e-16;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw NonConvergence("brent_root: iteration limit reached", {a, b, c});
}

/// Samples f at n+1 evenly spaced points on [lo, hi] and returns every
/// subinterval on which f changes sign. Non-finite samples break brackets.
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, double lo, double hi, int n) {
    std::vector<Bracket> out;
    double x_prev = lo;
    double f_prev = f(lo);
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        const double fx = f(x);
        if (std::isfinite(fx) && std::isfinite(f_prev)) {
            if (f_prev == 0.0 || (f_prev > 0.0) != (fx > 0.0)) {
                out.push_back({x_prev, x});
            }
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

struct ComplexNewtonResult {
    std::complex<double> root;
    double residual;
    int iterations;
    bool converged;
    std::vector<double> trace; // |f| per iteration
};

/// Newton's method in the complex plane with step halving whenever |f|
/// would grow. Converged when |f| < ftol or the step is below xtol |z|.
template <class F, class DF>
ComplexNewtonResult newton_complex(F&& f, DF&& df, std::complex<double> z0,
                                   double ftol = 1e-13, double xtol = 1e-15,
                                   int max_iter = 100) {
    ComplexNewtonResult r{z0, 0.0, 0, false, {}};
    std::complex<double> z = z0;
    std::complex<double> fz = f(z);
    for (int it = 0; it < max_iter; ++it) {
        r.trace.push_back(std::abs(fz));
        if (std::abs(fz) < ftol) {
            r = {z, std::abs(fz), it, true, std::move(r.trace)};
            return r;
        }
        const std::complex<double> dfz = df(z);
        if (dfz == std::complex<double>(0.0, 0.0)) break;
        std::complex<double> step = fz / dfz;
        std::complex<double> zn = z - step;
        std::complex<double> fn = f(zn);
        for (int h = 0; h < 30 && !(std::abs(fn) < std::abs(fz)); ++h) {
            step *= 0.5;
            zn = z - step;
            fn = f(zn);
        }
        z = zn;
        fz = fn;
        if (std::abs(step) < xtol * std::max(1.0, std::abs(z))) {
            r = {z, std::abs(fz), it + 1, std::abs(fz) < 1e3 * ftol, std::move(r.trace)};
            return r;
        }
    }
    r.root = z;
    r.residual = std::abs(fz);
    r.iterations = max_iter;
    r.converged = false;
    return r;
}

} // namespace nlse
