#pragma once

// Independent numerical checks for the analytic solutions: a
// finite-difference residual of the stationary equation, a fixed-step RK4
// shooting integrator that applies delta jumps exactly, and an
// argument-principle zero counter. None of this uses the closed forms it
// is meant to verify.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadrature.hpp"

namespace nlse {

struct DeltaSite {
    double position;
    double strength;
};

struct ResidualReport {
    double max_residual = 0.0;
    double grid_step = 0.0;
    std::vector<double> excluded_points;
    /// psi'(a+) - psi'(a-) - 2 lambda psi(a) per delta, from one-sided
    /// differences. NaN when the delta is not on a grid node.
    std::vector<double> jump_defects;
};

enum class Stencil { Second, Fourth, Sixth };

/// Residual of -1/2 psi'' + g psi^3 - mu psi on a uniform grid
/// x_i = x_start + i h, by central differences (3-, 5- or 7-point).
/// Stencils touching a delta are skipped; each delta instead gets a jump
/// defect from one-sided differences (2nd, 3rd or 4th order).
inline ResidualReport nlse_residual(std::span<const double> psi, double x_start, double h,
                                    double mu, double g, std::span<const DeltaSite> deltas = {},
                                    Stencil stencil = Stencil::Fourth) {
    if (!(h > 0.0)) throw std::domain_error("nlse_residual: grid step must be positive");
    if (h > 1e-2) throw std::domain_error("nlse_residual: grid too coarse (h > 1e-2)");
    ResidualReport report;
    report.grid_step = h;
    for (const auto& d : deltas) report.excluded_points.push_back(d.position);

    const std::size_t n = psi.size();
    const std::size_t half = stencil == Stencil::Sixth ? 3 : stencil == Stencil::Fourth ? 2 : 1;
    const double reach = (static_cast<double>(half) + 1e-6) * h;
    const double inv_h2 = 1.0 / (h * h);
    for (std::size_t i = half; i + half < n; ++i) {
        const double x = x_start + static_cast<double>(i) * h;
        const bool touches = std::any_of(deltas.begin(), deltas.end(), [&](const DeltaSite& d) {
            return std::abs(x - d.position) < reach;
        });
        if (touches) continue;
        double lap;
        switch (stencil) {
        case Stencil::Second: lap = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) * inv_h2; break;
        case Stencil::Fourth:
            lap = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1] - psi[i - 2]) *
                  inv_h2 / 12.0;
            break;
        default:
            lap = (2.0 * (psi[i + 3] + psi[i - 3]) - 27.0 * (psi[i + 2] + psi[i - 2]) +
                   270.0 * (psi[i + 1] + psi[i - 1]) - 490.0 * psi[i]) *
                  inv_h2 / 180.0;
        }
        const double r = -0.5 * lap + g * psi[i] * psi[i] * psi[i] - mu * psi[i];
        report.max_residual = std::max(report.max_residual, std::abs(r));
    }

    for (const auto& d : deltas) {
        const double idx = (d.position - x_start) / h;
        const double j_round = std::round(idx);
        if (std::abs(idx - j_round) > 1e-6 || j_round < 4.0 || j_round + 4.0 >= n) {
            report.jump_defects.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const auto j = static_cast<std::size_t>(j_round);
        double right, left;
        if (stencil == Stencil::Sixth) {
            right = (-25.0 * psi[j] + 48.0 * psi[j + 1] - 36.0 * psi[j + 2] + 16.0 * psi[j + 3] -
                     3.0 * psi[j + 4]) /
                    (12.0 * h);
            left = (25.0 * psi[j] - 48.0 * psi[j - 1] + 36.0 * psi[j - 2] - 16.0 * psi[j - 3] +
                    3.0 * psi[j - 4]) /
                   (12.0 * h);
        } else if (stencil == Stencil::Fourth) {
            right = (-11.0 * psi[j] + 18.0 * psi[j + 1] - 9.0 * psi[j + 2] + 2.0 * psi[j + 3]) /
                    (6.0 * h);
            left = (11.0 * psi[j] - 18.0 * psi[j - 1] + 9.0 * psi[j - 2] - 2.0 * psi[j - 3]) /
                   (6.0 * h);
        } else {
            right = (-3.0 * psi[j] + 4.0 * psi[j + 1] - psi[j + 2]) / (2.0 * h);
            left = (3.0 * psi[j] - 4.0 * psi[j - 1] + psi[j - 2]) / (2.0 * h);
        }
        report.jump_defects.push_back(right - left - 2.0 * d.strength * psi[j]);
    }
    return report;
}

/// Samples f on x_start + i h, i = 0..n-1.
template <class F>
std::vector<double> sample_uniform(F&& f, double x_start, double h, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(x_start + static_cast<double>(i) * h);
    return out;
}

class ShootingOverflow : public std::runtime_error {
public:
    explicit ShootingOverflow(double position)
        : std::runtime_error("shoot: solution blew up at x = " + std::to_string(position)),
          position_(position) {}
    double position() const noexcept { return position_; }

private:
    double position_;
};

struct Trajectory {
    std::vector<double> x;
    std::vector<double> psi;
    std::vector<double> dpsi; ///< right-hand derivative at delta nodes
};

/// Fixed-step RK4 for psi'' = 2 (g psi^3 - mu psi) from x_start to x_end.
/// Step boundaries are aligned to the delta positions, where
/// psi' += 2 lambda psi is applied exactly. Each segment uses the largest
/// step <= h that divides it evenly.
inline Trajectory shoot(double mu, double g, std::span<const DeltaSite> deltas, double x_end,
                        double psi0, double dpsi0, double h, double x_start = 0.0,
                        double blowup = 1e100) {
    if (!(h > 0.0) || !(x_end > x_start)) {
        throw std::domain_error("shoot: need h > 0 and x_end > x_start");
    }
    std::vector<DeltaSite> sites;
    for (const auto& d : deltas) {
        if (d.position > x_start && d.position < x_end) sites.push_back(d);
    }
    std::sort(sites.begin(), sites.end(),
              [](const DeltaSite& a, const DeltaSite& b) { return a.position < b.position; });

    const auto accel = [mu, g](double y) { return 2.0 * (g * y * y * y - mu * y); };

    Trajectory t;
    double y = psi0, v = dpsi0, x = x_start;
    t.x.push_back(x);
    t.psi.push_back(y);
    t.dpsi.push_back(v);

    std::size_t next_site = 0;
    while (x < x_end) {
        const double seg_end = next_site < sites.size() ? sites[next_site].position : x_end;
        const double len = seg_end - x;
        const auto steps = static_cast<long>(std::ceil(len / h - 1e-9));
        const double dx = len / static_cast<double>(steps);
        const double seg_start = x;
        for (long s = 1; s <= steps; ++s) {
            const double k1y = v, k1v = accel(y);
            const double k2y = v + 0.5 * dx * k1v, k2v = accel(y + 0.5 * dx * k1y);
            const double k3y = v + 0.5 * dx * k2v, k3v = accel(y + 0.5 * dx * k2y);
            const double k4y = v + dx * k3v, k4v = accel(y + dx * k3y);
            y += dx / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            v += dx / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            x = (s == steps) ? seg_end : seg_start + static_cast<double>(s) * dx;
            if (!std::isfinite(y) || std::abs(y) > blowup) throw ShootingOverflow(x);
            t.x.push_back(x);
            t.psi.push_back(y);
            t.dpsi.push_back(v);
        }
        if (next_site < sites.size()) {
            v += 2.0 * sites[next_site].strength * y;
            t.dpsi.back() = v;
            ++next_site;
        }
    }
    return t;
}

struct Rectangle {
    double re_min;
    double re_max;
    double im_min;
    double im_max;
};

class ContourTooClose : public std::runtime_error {
public:
    explicit ContourTooClose(std::complex<double> where)
        : std::runtime_error("argument_principle_count: |f| < 1e-8 on the contour near (" +
                             std::to_string(where.real()) + ", " + std::to_string(where.imag()) +
                             ")"),
          where_(where) {}
    std::complex<double> where() const noexcept { return where_; }

private:
    std::complex<double> where_;
};

namespace detail {

inline double arg_change(const std::function<std::complex<double>(std::complex<double>)>& f,
                         std::complex<double> z0, std::complex<double> f0,
                         std::complex<double> z1, std::complex<double> f1, int depth) {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) < std::numbers::pi / 4.0 || depth == 0) return d;
    const std::complex<double> zm = 0.5 * (z0 + z1);
    const std::complex<double> fm = f(zm);
    if (std::abs(fm) < 1e-8) throw ContourTooClose(zm);
    return arg_change(f, z0, f0, zm, fm, depth - 1) + arg_change(f, zm, fm, z1, f1, depth - 1);
}

} // namespace detail

/// Number of zeros of an analytic f inside the rectangle, from the total
/// change of arg f along its boundary (counter-clockwise). Each edge is
/// sampled at n_samples points; segments with a large phase jump are
/// bisected further.
inline int argument_principle_count(
    const std::function<std::complex<double>(std::complex<double>)>& f, const Rectangle& rect,
    int n_samples = 400) {
    if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min) || n_samples < 4) {
        throw std::domain_error("argument_principle_count: degenerate rectangle");
    }
    const std::complex<double> corners[5] = {
        {rect.re_min, rect.im_min}, {rect.re_max, rect.im_min}, {rect.re_max, rect.im_max},
        {rect.re_min, rect.im_max}, {rect.re_min, rect.im_min}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        std::complex<double> z_prev = corners[e];
        std::complex<double> f_prev = f(z_prev);
        if (std::abs(f_prev) < 1e-8) throw ContourTooClose(z_prev);
        for (int i = 1; i <= n_samples; ++i) {
            const double s = static_cast<double>(i) / n_samples;
            const std::complex<double> z = corners[e] + s * (corners[e + 1] - corners[e]);
            const std::complex<double> fz = f(z);
            if (std::abs(fz) < 1e-8) throw ContourTooClose(z);
            total += detail::arg_change(f, z_prev, f_prev, z, fz, 30);
            z_prev = z;
            f_prev = fz;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

} // namespace nlse
