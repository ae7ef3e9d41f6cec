#pragma once

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlse {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// `tol`, with Richardson correction on each accepted panel. The interval
/// is pre-split into `panels` pieces so that oscillatory integrands are
/// not accepted on a lucky first estimate.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10, int panels = 8,
                        int max_depth = 50) {
    if (!(b >= a)) throw std::domain_error("adaptive_simpson: need b >= a");
    if (a == b) return 0.0;
    double sum = 0.0;
    const double width = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == panels) ? b : lo + width;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fhi = f(hi), fmid = f(mid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        sum += detail::simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole, tol / panels,
                                    max_depth);
    }
    return sum;
}

/// 20-point Gauss-Legendre nodes/weights on [-1, 1], from Newton iteration
/// on P_20.
struct GaussLegendre20 {
    static constexpr int n = 20;
    std::array<double, n> nodes{};
    std::array<double, n> weights{};

    GaussLegendre20() {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    static const GaussLegendre20& instance() {
        static const GaussLegendre20 rule;
        return rule;
    }
};

/// Composite 20-point Gauss-Legendre on [a, b] with panels no wider than
/// `max_panel`. Intended for analytic integrands whose nearest complex
/// singularity is at least ~max_panel away from the real axis.
template <class F>
double gauss_legendre(F&& f, double a, double b, double max_panel) {
    if (a == b) return 0.0;
    const auto& rule = GaussLegendre20::instance();
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_panel)));
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double mid = a + (i + 0.5) * width;
        const double half = 0.5 * width;
        double s = 0.0;
        for (int k = 0; k < GaussLegendre20::n; ++k) {
            s += rule.weights[k] * f(mid + half * rule.nodes[k]);
        }
        sum += half * s;
    }
    return sum;
}

} // namespace nlse
