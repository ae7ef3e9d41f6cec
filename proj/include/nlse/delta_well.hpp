#pragma once

// Stationary states of -1/2 psi'' + lambda delta(x) psi + g |psi|^2 psi = mu psi
// on the whole line: normalizable bound states for any sign of g, the
// periodic cn continuation above the attractive threshold, and the tanh
// (dark) solution. Units hbar = m = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

#include "elliptic.hpp"
#include "errors.hpp"
#include "periodic_wave.hpp"
#include "quadrature.hpp"
#include "roots.hpp"

namespace nlse {

/// psi'(x+) - psi'(x-) - 2 lambda psi(x); zero iff the delta jump holds.
inline double matching_defect(double psi_left_slope, double psi_right_slope,
                              double psi_at_delta, double lambda) {
    return (psi_right_slope - psi_left_slope) - 2.0 * lambda * psi_at_delta;
}

enum class SolitonFamily { BrightSech, Cosech, LinearExp, CriticalRational };

inline const char* to_string(SolitonFamily f) {
    switch (f) {
    case SolitonFamily::BrightSech: return "bright-sech";
    case SolitonFamily::Cosech: return "cosech";
    case SolitonFamily::LinearExp: return "linear-exp";
    case SolitonFamily::CriticalRational: return "critical-rational";
    }
    return "unknown";
}

/// A normalized, even bound state psi(x) = w(|x|).
///
///   BrightSech        w(s) = (k/sqrt|g|) sech(k (s - x0)),    g < 0
///   Cosech            w(s) = (k/sqrt g) cosech(k (s - x0)),   g > 0, x0 < 0
///   LinearExp         w(s) = sqrt(k) exp(-k s),                g = 0, k = -lambda
///   CriticalRational  w(s) = 1 / (sqrt g (s - x0)),            g = -2 lambda, x0 = 1/lambda
///
/// with k = -lambda - g/2 and mu = -k^2/2 (mu = 0 for CriticalRational).
struct SolitonState {
    double mu;
    double k;
    double x0;
    double lambda;
    double g;
    SolitonFamily family;

    double amplitude() const {
        switch (family) {
        case SolitonFamily::BrightSech:
        case SolitonFamily::Cosech: return k / std::sqrt(std::abs(g));
        case SolitonFamily::LinearExp: return std::sqrt(k);
        case SolitonFamily::CriticalRational: return 1.0 / std::sqrt(g);
        }
        return 0.0;
    }

    /// w(s) for s >= 0.
    double profile(double s) const {
        const double b = amplitude();
        switch (family) {
        case SolitonFamily::BrightSech: return b / std::cosh(k * (s - x0));
        case SolitonFamily::Cosech: return b / std::sinh(k * (s - x0));
        case SolitonFamily::LinearExp: return b * std::exp(-k * s);
        case SolitonFamily::CriticalRational: return b / (s - x0);
        }
        return 0.0;
    }

    /// w'(s) for s >= 0.
    double profile_slope(double s) const {
        const double b = amplitude();
        switch (family) {
        case SolitonFamily::BrightSech: {
            const double y = k * (s - x0);
            return -b * k * std::tanh(y) / std::cosh(y);
        }
        case SolitonFamily::Cosech: {
            const double y = k * (s - x0);
            return -b * k / (std::sinh(y) * std::tanh(y));
        }
        case SolitonFamily::LinearExp: return -k * b * std::exp(-k * s);
        case SolitonFamily::CriticalRational: return -b / ((s - x0) * (s - x0));
        }
        return 0.0;
    }

    double value(double x) const { return profile(std::abs(x)); }

    /// psi'(x) away from the origin; at x = 0 the right-hand limit.
    double slope(double x) const {
        return x < 0.0 ? -profile_slope(-x) : profile_slope(x);
    }

    /// int_s^inf w^2, in closed form.
    double tail_norm(double s) const {
        const double b = amplitude();
        switch (family) {
        case SolitonFamily::BrightSech: return b * b / k * (1.0 - std::tanh(k * (s - x0)));
        case SolitonFamily::Cosech: return b * b / k * (1.0 / std::tanh(k * (s - x0)) - 1.0);
        case SolitonFamily::LinearExp: return 0.5 * std::exp(-2.0 * k * s);
        case SolitonFamily::CriticalRational: return b * b / (s - x0);
        }
        return 0.0;
    }
};

struct CriticalValues {
    double lambda_c; ///< critical delta strength at |g| = 1
    double mu_c;     ///< chemical potential where the bound state disappears (|g| = 1)
    double g_c;      ///< critical nonlinearity -2 lambda for the given lambda
};

enum class NonlinearitySign { Attractive, Repulsive };

inline CriticalValues critical_values(double lambda, NonlinearitySign sign) {
    if (!std::isfinite(lambda)) throw std::domain_error("critical_values: lambda not finite");
    if (sign == NonlinearitySign::Attractive) {
        return {0.25, -1.0 / 32.0, -2.0 * lambda};
    }
    return {-0.5, 0.0, -2.0 * lambda};
}

struct NoBoundState {
    double lambda;
    double g;
    CriticalValues critical;
    std::string reason;
};

using BoundStateResult = std::variant<SolitonState, NoBoundState>;

/// The unique even bound state for (lambda, g), or NoBoundState.
///
/// Existence: g < 0 needs lambda < -g/4 (lambda_c = 1/4 at g = -1);
/// g > 0 needs g <= -2 lambda (lambda <= -1/2 at g = 1), with equality
/// giving the CriticalRational limit; g = 0 needs lambda < 0.
inline BoundStateResult bound_state(double lambda, double g) {
    if (!std::isfinite(lambda) || !std::isfinite(g)) {
        throw std::domain_error("bound_state: lambda and g must be finite");
    }
    const auto crit = critical_values(
        lambda, g < 0.0 ? NonlinearitySign::Attractive : NonlinearitySign::Repulsive);

    if (g == 0.0) {
        if (lambda < 0.0) {
            return SolitonState{-0.5 * lambda * lambda, -lambda, 0.0, lambda, 0.0,
                                SolitonFamily::LinearExp};
        }
        return NoBoundState{lambda, g, crit, "linear delta potential needs lambda < 0"};
    }

    const double k = -lambda - 0.5 * g;
    // tanh(k x0) = lambda/k (g < 0) or k/lambda (g > 0); both reduce to
    // x0 = log(|g| / |4 lambda + g|) / (2k), written with log1p for accuracy
    // near the thresholds.
    const double denom = -4.0 * lambda - g;
    if (g < 0.0) {
        if (!(lambda < -0.25 * g)) {
            return NoBoundState{lambda, g, crit,
                                "attractive nonlinearity needs lambda < |g|/4 (lambda_c = " +
                                    std::to_string(-0.25 * g) + ")"};
        }
        const double x0 = std::log1p(4.0 * lambda / denom) / (2.0 * k);
        return SolitonState{-0.5 * k * k, k, x0, lambda, g, SolitonFamily::BrightSech};
    }

    if (lambda < 0.0 && g == -2.0 * lambda) {
        return SolitonState{0.0, 0.0, 1.0 / lambda, lambda, g, SolitonFamily::CriticalRational};
    }
    if (!(k > 0.0)) {
        return NoBoundState{lambda, g, crit,
                            "repulsive nonlinearity needs g < g_c = -2 lambda = " +
                                std::to_string(crit.g_c)};
    }
    const double x0 = std::log1p(-4.0 * k / denom) / (2.0 * k);
    return SolitonState{-0.5 * k * k, k, x0, lambda, g, SolitonFamily::Cosech};
}

/// The closed form sqrt(-lambda) / (|x| - 2 lambda) quoted for the
/// critical state at g = -2 lambda. It is normalized for every lambda < 0,
/// but it meets the delta jump condition and the nonlinear equation only
/// at lambda = -1/sqrt(2); the limit reached by the cosech family is
/// SolitonState{CriticalRational}, which equals 1/(|x| + 2) at
/// lambda = -1/2, g = 1.
inline double critical_wavefunction(double lambda, double x) {
    if (!(lambda < 0.0)) throw std::domain_error("critical_wavefunction: need lambda < 0");
    return std::sqrt(-lambda) / (std::abs(x) - 2.0 * lambda);
}

/// int |psi|^2 over the real line: adaptive Simpson on [0, s_max] plus the
/// closed-form tail, doubled by symmetry.
inline double norm(const SolitonState& state, double tol = 1e-12) {
    double s_max;
    switch (state.family) {
    case SolitonFamily::CriticalRational: s_max = 50.0 * std::abs(state.x0); break;
    case SolitonFamily::LinearExp: s_max = 20.0 / state.k; break;
    default: s_max = std::max(state.x0, 0.0) + 20.0 / state.k; break;
    }
    const auto density = [&](double s) {
        const double w = state.profile(s);
        return w * w;
    };
    const double inner = adaptive_simpson(density, 0.0, s_max, tol, 64);
    return 2.0 * (inner + state.tail_norm(s_max));
}

/// Dark soliton sqrt(mu/g) tanh(sqrt(mu) (x - x0)) across a delta at the
/// origin. Matching the left and right tanh branches forces x0 = 0 for
/// every lambda: psi(0) = 0, so the jump term vanishes.
struct DarkSoliton {
    double mu;
    double lambda;
    double x0;
    double g;

    double value(double x) const {
        return std::sqrt(mu / g) * std::tanh(std::sqrt(mu) * (x - x0));
    }
    double slope(double x) const {
        const double r = std::sqrt(mu);
        const double c = std::cosh(r * (x - x0));
        return std::sqrt(mu / g) * r / (c * c);
    }
};

inline DarkSoliton dark_soliton(double mu, double lambda, double g = 1.0) {
    if (!(mu > 0.0)) throw std::domain_error("dark_soliton: need mu > 0");
    if (!(g > 0.0)) throw std::domain_error("dark_soliton: need g > 0");
    return {mu, lambda, 0.0, g};
}

/// Periodic sn solution for repulsive nonlinearity. Its period obeys
/// L = sqrt(8 (p + 1) / mu) K(p) >= 2 pi / sqrt(2 mu).
inline PeriodicWave dark_periodic_wave(double mu, double p, double shift = 0.0,
                                       double g = 1.0) {
    return make_sn_wave(mu, p, g, shift);
}

inline double period_lower_bound(double mu) {
    if (!(mu > 0.0)) throw std::domain_error("period_lower_bound: need mu > 0");
    return 2.0 * std::numbers::pi / std::sqrt(2.0 * mu);
}

/// Continuation of the g = -1 bound state above lambda_c = 1/4: an even
/// periodic cn wave psi(x) = w(|x|), w = A cn(q (s - x0) | p), with
/// mu = -(2 lambda - 1)^2 / 8 and |psi(0)|^2 = |1/4 - lambda|, the
/// modulus of the bound-state expression k sech(artanh(lambda/k))
/// continued past lambda_c. x0 is the position of the first maximum.
inline PeriodicWave bright_scattering_state(double lambda) {
    if (!(lambda > 0.25)) {
        throw std::domain_error("bright_scattering_state: need lambda > lambda_c = 1/4");
    }
    const double k = 0.5 - lambda;
    const double k2 = k * k;
    if (k2 == 0.0) {
        throw NoSolutionError("bright_scattering_state: mu = 0 at lambda = 1/2");
    }
    const double psi0_sq = lambda - 0.25;
    const double target = lambda * lambda * psi0_sq;

    // Squared jump condition with cn^2 = psi0^2 / A^2 eliminated:
    //   A^2 q^2 sn^2 dn^2 - lambda^2 psi0^2 = 0,
    // A^2 = k^2 p / (2p - 1), q^2 = k^2 / (2p - 1). Parametrized by
    // t = -log(1 - p) so that p -> 1 near lambda_c stays resolvable.
    const auto residual = [&](double t) {
        const double p = -std::expm1(-t);
        const double s = 2.0 * p - 1.0;
        const double a2 = k2 * p / s;
        const double q2 = k2 / s;
        const double c2 = std::min(1.0, psi0_sq / a2);
        const double sn2 = 1.0 - c2;
        return (a2 * q2 * sn2 * (1.0 - p * sn2) - target) / target;
    };

    const double t_lo = std::log(2.0) + 1e-12;
    double t_hi = 36.0;
    // A must reach psi(0): p <= psi0^2 / (2 psi0^2 - k^2) when that is < 1.
    if (2.0 * psi0_sq > k2) {
        const double p_star = psi0_sq / (2.0 * psi0_sq - k2);
        if (p_star < 1.0) t_hi = -std::log1p(-p_star);
    }
    const auto brackets = scan_sign_changes(residual, t_lo, t_hi, 400);
    if (brackets.empty()) {
        throw NoSolutionError("bright_scattering_state: no sign change for t in [" +
                              std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]");
    }
    // Largest p: the member closest to the sech limit.
    const auto& br = brackets.back();
    const double t = brent_root(residual, br.lo, br.hi, 1e-15);

    const double p = -std::expm1(-t);
    const double s = 2.0 * p - 1.0;
    const double amp = std::sqrt(k2 * p / s);
    const double q = std::sqrt(k2 / s);
    const double c = std::min(1.0, std::sqrt(psi0_sq) / amp);
    const double theta = incomplete_f(std::acos(c), EllipticModulus(p));
    const double kp = complete_k(EllipticModulus(p));
    return PeriodicWave{WaveKind::Cn, amp, 4.0 * kp / q, theta / q, EllipticModulus(p),
                        -0.5 * k2, -1.0};
}

/// Jump defect of the even extension psi(x) = w(|x|) of a wave at x = 0.
inline double even_extension_defect(const PeriodicWave& w, double lambda) {
    const double slope = w.slope(0.0);
    return matching_defect(-slope, slope, w.value(0.0), lambda);
}

struct TransitionDiagnostics {
    double x0;
    double norm_per_period;
    double period; ///< infinite below lambda_c
};

/// Position of the first maximum and norm per period across lambda_c = 1/4
/// (g = -1). Below lambda_c the closed form
///   x0 = artanh(lambda / (1/2 - lambda)) / (1/2 - lambda)
/// is used and the norm is exactly 1; above, the cn continuation is
/// integrated over one period [-L/2, L/2].
inline TransitionDiagnostics transition_diagnostics(double lambda) {
    if (lambda == 0.25) {
        throw std::domain_error("transition_diagnostics: singular at lambda_c = 1/4");
    }
    if (lambda < 0.25) {
        const double k = 0.5 - lambda;
        return {std::atanh(lambda / k) / k, 1.0, std::numeric_limits<double>::infinity()};
    }
    const PeriodicWave w = bright_scattering_state(lambda);
    const auto density = [&](double s) {
        const double v = w.value(s);
        return v * v;
    };
    const double n = 2.0 * adaptive_simpson(density, 0.0, 0.5 * w.period, 1e-12, 64);
    return {w.shift, n, w.period};
}

} // namespace nlse
