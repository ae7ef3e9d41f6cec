#pragma once

// Linear scattering off a delta shell: hard wall at x = 0 and a delta of
// strength lambda at x = a.
//
// Pole condition of the S-matrix: e^{2ika} - 1 + ik/lambda = 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "roots.hpp"

namespace nlse {

struct ShellConfig {
    double a;
    double lambda;

    ShellConfig(double a_, double lambda_) : a(a_), lambda(lambda_) {
        if (!(a_ > 0.0) || !std::isfinite(a_)) {
            throw std::domain_error("ShellConfig: shell radius must be positive");
        }
        if (!std::isfinite(lambda_)) throw std::domain_error("ShellConfig: lambda not finite");
    }
};

enum class Side { Left, Right };

/// Scattering solution normalized to sin(kx) inside the shell.
inline double linear_wavefunction(const ShellConfig& cfg, double k, double x) {
    if (x < 0.0) throw std::domain_error("linear_wavefunction: x < 0");
    if (!(k > 0.0)) throw std::domain_error("linear_wavefunction: k must be positive");
    if (x <= cfg.a) return std::sin(k * x);
    return std::sin(k * x) + 2.0 * cfg.lambda / k * std::sin(k * cfg.a) * std::sin(k * (x - cfg.a));
}

/// Continuation of linear_wavefunction to complex k (e.g. at a pole).
inline std::complex<double> linear_wavefunction(const ShellConfig& cfg, std::complex<double> k,
                                                double x) {
    if (x < 0.0) throw std::domain_error("linear_wavefunction: x < 0");
    if (k == std::complex<double>(0.0, 0.0)) throw std::domain_error("linear_wavefunction: k = 0");
    if (x <= cfg.a) return std::sin(k * x);
    return std::sin(k * x) + 2.0 * cfg.lambda / k * std::sin(k * cfg.a) * std::sin(k * (x - cfg.a));
}

/// Derivative of linear_wavefunction; at x = a the side selects the limit.
inline double linear_wavefunction_slope(const ShellConfig& cfg, double k, double x,
                                        Side side = Side::Right) {
    if (x < 0.0) throw std::domain_error("linear_wavefunction_slope: x < 0");
    if (!(k > 0.0)) throw std::domain_error("linear_wavefunction_slope: k must be positive");
    const bool inside = x < cfg.a || (x == cfg.a && side == Side::Left);
    if (inside) return k * std::cos(k * x);
    return k * std::cos(k * x) + 2.0 * cfg.lambda * std::sin(k * cfg.a) * std::cos(k * (x - cfg.a));
}

/// delta(k) = atan2(cos 2ka - 1, sin 2ka + k/lambda), in (-pi, pi].
inline double phase_shift(const ShellConfig& cfg, double k) {
    if (!(k > 0.0)) throw std::domain_error("phase_shift: k must be positive");
    if (cfg.lambda == 0.0) throw std::domain_error("phase_shift: lambda = 0");
    const double num = std::cos(2.0 * k * cfg.a) - 1.0;
    const double den = std::sin(2.0 * k * cfg.a) + k / cfg.lambda;
    if (num == 0.0 && den == 0.0) throw std::domain_error("phase_shift: 0/0");
    return std::atan2(num, den);
}

/// Phase shift along increasing k, unwrapped by multiples of pi so that
/// consecutive values never jump by more than pi/2.
inline std::vector<double> phase_shift_scan(const ShellConfig& cfg, const std::vector<double>& ks) {
    std::vector<double> out;
    out.reserve(ks.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        double d = phase_shift(cfg, ks[i]) + offset;
        if (i > 0) {
            while (d - out.back() > std::numbers::pi / 2.0) {
                d -= std::numbers::pi;
                offset -= std::numbers::pi;
            }
            while (d - out.back() < -std::numbers::pi / 2.0) {
                d += std::numbers::pi;
                offset += std::numbers::pi;
            }
        }
        out.push_back(d);
    }
    return out;
}

struct SMatrixValue {
    std::complex<double> value;
    bool is_pole;
};

/// S(k) = (D + iN) / (D - iN) with D = lambda sin 2ka + k and
/// N = lambda (cos 2ka - 1); analytic in k.
inline SMatrixValue s_matrix(const ShellConfig& cfg, std::complex<double> k) {
    if (k == std::complex<double>(0.0, 0.0)) throw std::domain_error("s_matrix: k = 0");
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> d = cfg.lambda * std::sin(2.0 * k * cfg.a) + k;
    const std::complex<double> n = cfg.lambda * (std::cos(2.0 * k * cfg.a) - 1.0);
    const std::complex<double> den = d - i * n;
    const double scale = std::abs(d) + std::abs(n) + std::abs(k);
    if (std::abs(den) <= 1e-15 * scale) {
        return {std::complex<double>(std::numeric_limits<double>::infinity(), 0.0), true};
    }
    return {(d + i * n) / den, false};
}

/// e^{2ika} - 1 + ik/lambda.
inline std::complex<double> pole_condition(const ShellConfig& cfg, std::complex<double> k) {
    if (cfg.lambda == 0.0) throw std::domain_error("pole_condition: lambda = 0");
    const std::complex<double> i(0.0, 1.0);
    return std::exp(2.0 * i * k * cfg.a) - 1.0 + i * k / cfg.lambda;
}

inline std::complex<double> pole_condition_derivative(const ShellConfig& cfg,
                                                      std::complex<double> k) {
    const std::complex<double> i(0.0, 1.0);
    return 2.0 * i * cfg.a * std::exp(2.0 * i * k * cfg.a) + i / cfg.lambda;
}

/// The inequality lambda a > -1/2 exactly as it is usually quoted for the
/// existence of a bound state.
inline bool bound_state_criterion_quoted(const ShellConfig& cfg) {
    return cfg.lambda * cfg.a > -0.5;
}

/// Whether a root lies on the positive imaginary axis. Along k = i kappa
/// the condition is e^{-2 kappa a} - 1 = kappa/lambda, which has a
/// positive root iff lambda a < -1/2.
inline bool has_bound_state(const ShellConfig& cfg) { return cfg.lambda * cfg.a < -0.5; }

enum class PoleKind { Resonance, BoundState, VirtualState, Ambiguous };

inline const char* to_string(PoleKind k) {
    switch (k) {
    case PoleKind::Resonance: return "resonance";
    case PoleKind::BoundState: return "bound";
    case PoleKind::VirtualState: return "virtual";
    case PoleKind::Ambiguous: return "ambiguous";
    }
    return "?";
}

struct SMatrixPole {
    PoleKind kind;
    std::complex<double> k;
    std::complex<double> energy; ///< k^2 / 2
    double E;                    ///< Re energy
    double Gamma;                ///< -2 Im energy
    int n;                       ///< resonance band, 0 on the imaginary axis
};

namespace detail {

inline SMatrixPole make_pole(PoleKind kind, std::complex<double> k, int n) {
    const std::complex<double> e = 0.5 * k * k;
    return {kind, k, e, e.real(), -2.0 * e.imag(), n};
}

// Root of (e^{-2 kappa a} - 1 - kappa/lambda) / kappa on the real kappa
// axis, inside [lo, hi].
inline double imaginary_axis_root(const ShellConfig& cfg, double lo, double hi) {
    const auto h = [&](double kappa) {
        return (std::expm1(-2.0 * kappa * cfg.a) - kappa / cfg.lambda) / kappa;
    };
    return brent_root(h, lo, hi, 1e-15);
}

} // namespace detail

/// All S-matrix poles with Re k > 0 in resonance bands 1..n_max, plus the
/// roots on the imaginary axis (k = 0 excluded). Seeds come from the
/// fixed-point form k = (2 pi n - i Log(1 - ik/lambda)) / (2a) and are
/// polished by complex Newton.
inline std::vector<SMatrixPole> find_poles(const ShellConfig& cfg, int n_max) {
    if (cfg.lambda == 0.0) throw std::domain_error("find_poles: lambda = 0 has no poles");
    if (n_max < 1) throw std::domain_error("find_poles: n_max must be >= 1");
    const std::complex<double> i(0.0, 1.0);
    const auto f = [&](std::complex<double> k) { return pole_condition(cfg, k); };
    const auto df = [&](std::complex<double> k) { return pole_condition_derivative(cfg, k); };

    std::vector<SMatrixPole> poles;
    const auto add = [&](PoleKind kind, std::complex<double> k, int n) {
        for (const auto& p : poles) {
            if (std::abs(p.k - k) < 1e-8) return;
        }
        poles.push_back(detail::make_pole(kind, k, n));
    };

    if (has_bound_state(cfg)) {
        const double kappa = detail::imaginary_axis_root(cfg, 1e-300, std::abs(cfg.lambda));
        add(PoleKind::BoundState, i * kappa, 0);
    } else if (cfg.lambda < 0.0 && cfg.lambda * cfg.a > -0.5) {
        double hi = 1e-3;
        const auto g = [&](double s) { return std::expm1(2.0 * s * cfg.a) + s / cfg.lambda; };
        while (g(hi) <= 0.0) hi *= 2.0;
        const double kappa = detail::imaginary_axis_root(cfg, -hi, -1e-300);
        add(PoleKind::VirtualState, i * kappa, 0);
    }

    for (int n = 1; n <= n_max; ++n) {
        std::complex<double> k(n * std::numbers::pi / cfg.a, 0.0);
        for (int it = 0; it < 60; ++it) {
            k = (2.0 * std::numbers::pi * n - i * std::log(1.0 - i * k / cfg.lambda)) /
                (2.0 * cfg.a);
        }
        auto r = newton_complex(f, df, k, 1e-14, 1e-16, 100);
        if (!r.converged) {
            // fall back to a vertical line of seeds under the hard-wall level
            for (int s = 0; s < 40 && !r.converged; ++s) {
                const double im = -1e-3 - (2.0 - 1e-3) * s / 39.0;
                r = newton_complex(f, df, {n * std::numbers::pi / cfg.a, im}, 1e-14, 1e-16, 100);
            }
        }
        if (!r.converged) {
            throw NonConvergence("find_poles: Newton failed in band " + std::to_string(n),
                                 r.trace);
        }
        std::complex<double> root = r.root;
        if (root.real() < 0.0) root = -std::conj(root);
        const PoleKind kind =
            std::abs(root.imag()) <= 1e-10 ? PoleKind::Ambiguous : PoleKind::Resonance;
        add(kind, root, n);
    }
    return poles;
}

/// Inside amplitude over outside amplitude at energy E = k^2/2. Outside,
/// psi = (1 + beta cos ka) sin kx - beta sin ka cos kx with
/// beta = 2 lambda sin(ka)/k.
inline double amplitude_ratio_linear(const ShellConfig& cfg, double E) {
    if (!(E > 0.0)) throw std::domain_error("amplitude_ratio_linear: E must be positive");
    const double k = std::sqrt(2.0 * E);
    const double beta = 2.0 * cfg.lambda * std::sin(k * cfg.a) / k;
    const double outside = std::hypot(1.0 + beta * std::cos(k * cfg.a), beta * std::sin(k * cfg.a));
    return 1.0 / outside;
}

} // namespace nlse
