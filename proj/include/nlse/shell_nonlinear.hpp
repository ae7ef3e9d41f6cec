#pragma once

// Delta shell with a cubic nonlinearity. Inside (0 < x < a) and outside
// the shell the solution is a periodic wave of the free equation, cn for
// g < 0 and sn for g > 0, with a common chemical potential mu. A state is
// called resonant when the inside amplitude is enhanced, i.e. when the
// amplitude ratio A_l/A_r has a maximum as a function of mu.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "elliptic.hpp"
#include "errors.hpp"
#include "periodic_wave.hpp"
#include "quadrature.hpp"
#include "roots.hpp"
#include "shell_linear.hpp"

namespace nlse {

/// Lowest chemical potential accepted by the shell solvers.
inline constexpr double kMinShellMu = 1e-6;

/// Inside wave with psi(0) = 0: cn shifted by a quarter period, or plain sn.
inline PeriodicWave left_wave_for(double mu, double g, double p_l, WaveKind kind) {
    if (!(mu >= kMinShellMu)) throw std::domain_error("left_wave_for: mu must be positive");
    if (kind == WaveKind::Cn) {
        if (!(g < 0.0)) throw std::domain_error("left_wave_for: cn needs g < 0");
        if (!(p_l >= 0.0 && p_l < 0.5)) {
            throw std::domain_error("left_wave_for: cn needs p in [0, 1/2) for mu > 0");
        }
        auto w = make_cn_wave(mu, p_l, g);
        w.shift = -0.25 * w.period;
        return w;
    }
    if (!(g > 0.0)) throw std::domain_error("left_wave_for: sn needs g > 0");
    if (!(p_l >= 0.0 && p_l < 1.0)) throw std::domain_error("left_wave_for: sn needs p in [0, 1)");
    return make_sn_wave(mu, p_l, g);
}

/// psi'^2 - g psi^4 + 2 mu psi^2, constant along any solution of the free
/// equation.
inline double first_integral(double psi, double slope, double mu, double g) {
    return slope * slope - g * psi * psi * psi * psi + 2.0 * mu * psi * psi;
}

/// Elliptic parameter of the cn wave with first integral C:
/// C = -(4 mu^2/g) p(1-p)/(1-2p)^2.
inline double cn_parameter_from_invariant(double c, double mu, double g) {
    const double f = -g * c / (4.0 * mu * mu);
    if (!(f >= 0.0)) throw std::domain_error("cn_parameter_from_invariant: negative invariant");
    const double s = std::sqrt(1.0 + 4.0 * f);
    return 2.0 * f / (s * (s + 1.0));
}

/// Elliptic parameter of the sn wave with first integral C:
/// C = (4 mu^2/g) p/(1+p)^2. Empty when C is outside [0, mu^2/g].
inline std::optional<double> sn_parameter_from_invariant(double c, double mu, double g) {
    const double f = g * c / (4.0 * mu * mu);
    if (!(f >= 0.0) || f >= 0.25) return std::nullopt;
    return 2.0 * f / ((1.0 - 2.0 * f) + std::sqrt(1.0 - 4.0 * f));
}

struct MatchedShellSolution {
    PeriodicWave left;
    PeriodicWave right;
    double mu;
    double g;
    double a;
    double g_eff;
    double amplitude_ratio;
    double x0_right; ///< right wave is A_r f(4K (x + x0)/L), x0 in [0, L)
    double continuity_defect;
    double jump_defect;

    double value(double x) const { return x < a ? left.value(x) : right.value(x); }
};

using MatchResult = std::variant<MatchedShellSolution, NoSolution>;

/// g times the integral of psi^2 over [0, a] by composite Gauss-Legendre.
inline double effective_nonlinearity(const PeriodicWave& left, double a) {
    if (left.g == 0.0 || left.modulus.value() == 0.0) return 0.0;
    const double p = left.modulus.value();
    const double q = left.rate();
    const double kp = p > 0.0 ? complete_k(left.modulus.complement()) : complete_k(0.0);
    const double panel = std::min(complete_k(left.modulus), kp) / q;
    const double integral =
        gauss_legendre([&](double x) { const double v = left.value(x); return v * v; }, 0.0, a, panel);
    return left.g * integral;
}

inline double effective_nonlinearity(const MatchedShellSolution& sol, const ShellConfig& cfg) {
    return effective_nonlinearity(sol.left, cfg.a);
}

/// Continues the left wave through the shell: the outside wave is fixed by
/// psi(a) and psi'(a+) = psi'(a-) + 2 lambda psi(a) through the first
/// integral, which gives p_r in closed form, and the phase follows from
/// inverting the Jacobi functions.
inline MatchResult match_at_shell(const PeriodicWave& left, const ShellConfig& cfg) {
    const double a = cfg.a;
    const double mu = left.mu;
    const double g = left.g;
    const double psi_a = left.value(a);
    const double slope_l = left.slope(a);
    const double slope_r = slope_l + 2.0 * cfg.lambda * psi_a;
    const double c = first_integral(psi_a, slope_r, mu, g);

    PeriodicWave right = left;
    double u = 0.0;
    if (left.kind == WaveKind::Cn) {
        const double p_r = cn_parameter_from_invariant(c, mu, g);
        if (!(p_r > 0.0)) return NoSolution{"outside wave has zero amplitude"};
        right = make_cn_wave(mu, p_r, g);
        const double q = right.rate();
        const double amp = right.amplitude;
        // sn^2 from psi'^2 = A^2 q^2 sn^2 dn^2 = A^2 q^2 y (1 - p y)
        const double w = slope_r * slope_r / (amp * amp * q * q);
        const double disc = std::max(0.0, 1.0 - 4.0 * p_r * w);
        const double sn_abs = std::sqrt(2.0 * w / (1.0 + std::sqrt(disc)));
        const double phi = std::atan2(slope_r > 0.0 ? -sn_abs : sn_abs, psi_a / amp);
        u = incomplete_f(phi, right.modulus);
    } else {
        const auto p_r = sn_parameter_from_invariant(c, mu, g);
        if (!p_r) {
            return NoSolution{"no sn wave outside the shell (amplitude ratio below threshold)"};
        }
        if (!(*p_r > 0.0)) return NoSolution{"outside wave has zero amplitude"};
        right = make_sn_wave(mu, *p_r, g);
        const double q = right.rate();
        const double amp = right.amplitude;
        // cn^2 from psi'^2 = A^2 q^2 c^2 (1 - p + p c^2)
        const double w = slope_r * slope_r / (amp * amp * q * q);
        const double pr = *p_r;
        const double c2 = 2.0 * w / ((1.0 - pr) + std::sqrt((1.0 - pr) * (1.0 - pr) + 4.0 * pr * w));
        const double cn_abs = std::sqrt(c2);
        const double phi = std::atan2(psi_a / amp, slope_r < 0.0 ? -cn_abs : cn_abs);
        u = incomplete_f(phi, right.modulus);
    }
    const double q = right.rate();
    double x0 = std::fmod(u / q - a, right.period);
    if (x0 < 0.0) x0 += right.period;
    right.shift = -x0;

    MatchedShellSolution sol{left, right, mu, g, a, 0.0, left.amplitude / right.amplitude, x0, 0.0, 0.0};
    sol.continuity_defect = right.value(a) - psi_a;
    sol.jump_defect = right.slope(a) - slope_l - 2.0 * cfg.lambda * psi_a;
    sol.g_eff = effective_nonlinearity(left, a);
    return sol;
}

/// Left-hand side minus right-hand side of the reduced matching equation
/// written with the first integral: f(p_r) - f(p_l) - (jump terms), where
/// f(p) = p(1-p)/(1-2p)^2 for cn and p/(1+p)^2 for sn. Zero at the p_r
/// chosen by match_at_shell.
inline double reduced_matching_residual(const PeriodicWave& left, const ShellConfig& cfg,
                                        double p_r) {
    const double mu = left.mu;
    const double p_l = left.modulus.value();
    const auto j = left.jacobi_at(cfg.a);
    const double lam = cfg.lambda;
    if (left.kind == WaveKind::Cn) {
        const auto f = [](double p) { return p * (1.0 - p) / ((1.0 - 2.0 * p) * (1.0 - 2.0 * p)); };
        const double lhs = 2.0 * lam * lam / mu * p_l / (1.0 - 2.0 * p_l) * j.cn * j.cn -
                           4.0 * lam / std::sqrt(2.0 * mu) * p_l / std::pow(1.0 - 2.0 * p_l, 1.5) *
                               j.cn * j.dn * j.sn;
        return lhs - (f(p_r) - f(p_l));
    }
    const auto f = [](double p) { return p / ((1.0 + p) * (1.0 + p)); };
    const double lhs = 2.0 * lam * lam / mu * p_l / (p_l + 1.0) * j.sn * j.sn +
                       p_l / std::pow(p_l + 1.0, 1.5) * 4.0 * lam / std::sqrt(2.0 * mu) * j.cn *
                           j.dn * j.sn;
    return lhs - (f(p_r) - f(p_l));
}

inline constexpr double kInnerParameterFloor = 1e-12;

/// Inside parameter p_l with effective_nonlinearity = g_eff at fixed mu.
/// Works in s = log(p/(p_cap - p)): the bracket is grown from small p
/// upwards, then refined by Brent's method. Returns the floor value when
/// |g_eff| is at or below the floor's own value (the linear limit).
inline std::variant<double, NoSolution> left_parameter_for(double mu, double g, double g_eff,
                                                           double a) {
    if (g == 0.0) throw std::domain_error("left_parameter_for: g = 0");
    if (g_eff != 0.0 && (g_eff > 0.0) != (g > 0.0)) {
        throw std::domain_error("left_parameter_for: g_eff and g must have the same sign");
    }
    const WaveKind kind = g < 0.0 ? WaveKind::Cn : WaveKind::Sn;
    const double p_cap = kind == WaveKind::Cn ? 0.5 : 1.0;
    const double p_max = p_cap - 1e-9;
    const double target = std::abs(g_eff);
    const auto to_p = [p_cap](double s) { return p_cap / (1.0 + std::exp(-s)); };
    const auto to_s = [p_cap](double p) { return std::log(p / (p_cap - p)); };
    const auto excess = [&](double s) {
        const auto w = left_wave_for(mu, g, to_p(s), kind);
        return (std::abs(effective_nonlinearity(w, a)) - target) / std::max(target, 1e-300);
    };
    double lo = to_s(kInnerParameterFloor);
    if (excess(lo) >= 0.0) return kInnerParameterFloor;
    const double s_max = to_s(p_max);
    double hi = std::min(-4.0, s_max);
    while (excess(hi) < 0.0) {
        if (hi >= s_max) return NoSolution{"g_eff not reachable at mu = " + std::to_string(mu)};
        lo = hi;
        hi = std::min(hi + 2.0, s_max);
    }
    return to_p(brent_root(excess, lo, hi, 1e-12));
}

/// Matched solution at chemical potential mu with the given g_eff.
inline MatchResult solve_shell(const ShellConfig& cfg, double g, double g_eff, double mu) {
    if (!(mu >= kMinShellMu)) throw std::domain_error("solve_shell: mu below 1e-6");
    const auto p = left_parameter_for(mu, g, g_eff, cfg.a);
    if (const auto* none = std::get_if<NoSolution>(&p)) return *none;
    const WaveKind kind = g < 0.0 ? WaveKind::Cn : WaveKind::Sn;
    return match_at_shell(left_wave_for(mu, g, std::get<double>(p), kind), cfg);
}

/// A_l/A_r at mu, or empty when no matched solution exists.
inline std::optional<double> shell_ratio(const ShellConfig& cfg, double g, double g_eff, double mu) {
    const auto r = solve_shell(cfg, g, g_eff, mu);
    if (const auto* s = std::get_if<MatchedShellSolution>(&r)) return s->amplitude_ratio;
    return std::nullopt;
}

struct ShellResonance {
    int n;
    double mu_n;       ///< position of the ratio maximum
    double peak;       ///< ratio at mu_n
    double mu_less;    ///< A_l = A_r crossing below mu_n (NaN if not found)
    double mu_greater; ///< A_l = A_r crossing above mu_n (NaN if not found)
    double width_fwhm; ///< full width at 1 + (peak - 1)/2 (NaN if not found)
    double width_delta;
};

struct ResonanceScan {
    double g_eff;
    std::vector<double> mu_grid;
    std::vector<std::optional<double>> ratio;
    std::vector<ShellResonance> resonances;
};

namespace detail {

template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

// First grid crossing of ratio = level walking from index `from` in
// direction `step`; returns the bracketing index pair.
inline std::optional<std::pair<std::size_t, std::size_t>> walk_to_level(
    const std::vector<std::optional<double>>& ratio, std::size_t from, int step, double level) {
    std::size_t i = from;
    while (true) {
        if ((step < 0 && i == 0) || (step > 0 && i + 1 >= ratio.size())) return std::nullopt;
        const std::size_t j = step < 0 ? i - 1 : i + 1;
        if (!ratio[i] || !ratio[j]) return std::nullopt;
        if ((*ratio[i] - level) * (*ratio[j] - level) <= 0.0) return std::make_pair(i, j);
        i = j;
    }
}

} // namespace detail

/// Sweeps mu over a uniform grid, records A_l/A_r (empty where no solution
/// exists) and analyses every interior local maximum above 1.
inline ResonanceScan scan_resonances(const ShellConfig& cfg, double g, double g_eff, double mu_lo,
                                     double mu_hi, int n_points) {
    if (n_points < 2) throw std::domain_error("scan_resonances: need at least 2 points");
    if (!(mu_lo >= kMinShellMu) || !(mu_hi > mu_lo)) {
        throw std::domain_error("scan_resonances: need 1e-6 <= mu_lo < mu_hi");
    }
    ResonanceScan scan{g_eff, {}, {}, {}};
    scan.mu_grid.resize(n_points);
    scan.ratio.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double mu = mu_lo + (mu_hi - mu_lo) * i / (n_points - 1.0);
        scan.mu_grid[i] = mu;
        scan.ratio[i] = shell_ratio(cfg, g, g_eff, mu);
    }

    const auto ratio_at = [&](double mu) {
        const auto r = shell_ratio(cfg, g, g_eff, mu);
        return r ? *r : std::numeric_limits<double>::quiet_NaN();
    };
    const auto& R = scan.ratio;
    const auto& M = scan.mu_grid;
    for (std::size_t i = 1; i + 1 < R.size(); ++i) {
        if (!R[i - 1] || !R[i] || !R[i + 1]) continue;
        if (!(*R[i] > *R[i - 1] && *R[i] >= *R[i + 1] && *R[i] > 1.0)) continue;

        ShellResonance res{};
        res.mu_n = detail::golden_max([&](double mu) { return ratio_at(mu); }, M[i - 1], M[i + 1],
                                      1e-10);
        res.peak = std::max(ratio_at(res.mu_n), *R[i]);
        const auto sol = solve_shell(cfg, g, g_eff, res.mu_n);
        if (const auto* s = std::get_if<MatchedShellSolution>(&sol)) {
            res.n = static_cast<int>(std::ceil(2.0 * cfg.a / s->left.period));
        }

        const auto crossing = [&](int step, double level) {
            const auto br = detail::walk_to_level(R, i, step, level);
            if (!br) return std::numeric_limits<double>::quiet_NaN();
            const double lo = std::min(M[br->first], M[br->second]);
            const double hi = std::max(M[br->first], M[br->second]);
            try {
                return brent_root([&](double mu) { return ratio_at(mu) - level; }, lo, hi, 1e-12);
            } catch (const NonConvergence&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        const auto interp = [&](int step, double level) {
            const auto br = detail::walk_to_level(R, i, step, level);
            if (!br) return std::numeric_limits<double>::quiet_NaN();
            const auto [j0, j1] = *br;
            const double t = (level - *R[j0]) / (*R[j1] - *R[j0]);
            return M[j0] + t * (M[j1] - M[j0]);
        };
        res.mu_less = crossing(-1, 1.0);
        res.mu_greater = crossing(+1, 1.0);
        res.width_delta = res.mu_greater - res.mu_less;
        const double half = 1.0 + 0.5 * (res.peak - 1.0);
        res.width_fwhm = interp(+1, half) - interp(-1, half);
        scan.resonances.push_back(res);
    }
    return scan;
}

/// mu_n^> to first order in g_eff: n^2 pi^2/(2a^2) + 3 g_eff/(2a).
inline double mu_greater_approx(const ShellConfig& cfg, int n, double g_eff) {
    if (n < 1) throw std::domain_error("mu_greater_approx: n >= 1");
    const double a = cfg.a;
    return n * n * std::numbers::pi * std::numbers::pi / (2.0 * a * a) + 1.5 * g_eff / a;
}

/// Period L_n^< of the linear solution that is symmetric about x = a on
/// [0, 2a]: tan(2 pi a/L) = -2 pi/(lambda L), n-th branch.
inline double less_period(const ShellConfig& cfg, int n) {
    if (n < 1) throw std::domain_error("less_period: n >= 1");
    if (cfg.lambda == 0.0) throw std::domain_error("less_period: lambda = 0");
    const double la = cfg.lambda * cfg.a;
    // with theta = 2 pi a/L: lambda a sin(theta) + theta cos(theta) = 0
    const auto h = [la](double th) { return la * std::sin(th) + th * std::cos(th); };
    const double pi = std::numbers::pi;
    const double lo = cfg.lambda > 0.0 ? (n - 0.5) * pi : n * pi;
    const double hi = cfg.lambda > 0.0 ? n * pi : (n + 0.5) * pi;
    const double theta = brent_root(h, lo + 1e-14, hi - 1e-14, 1e-15);
    return 2.0 * pi * cfg.a / theta;
}

/// mu_n^< to first order in g_eff.
inline double mu_less_approx(const ShellConfig& cfg, int n, double g_eff) {
    const double l = less_period(cfg, n);
    const double z = 4.0 * std::numbers::pi * cfg.a / l;
    return 2.0 * std::numbers::pi * std::numbers::pi / (l * l) +
           1.5 * g_eff / cfg.a / (1.0 - std::sin(z) / z);
}

/// Approximate lower bound sqrt(2 g_eff/(a mu)) on A_l/A_r for g > 0.
inline double repulsive_existence_threshold(double mu, double g_eff, double a) {
    if (!(mu > 0.0)) throw std::domain_error("repulsive_existence_threshold: mu > 0");
    if (!(g_eff >= 0.0)) throw std::domain_error("repulsive_existence_threshold: g_eff >= 0");
    if (!(a > 0.0)) throw std::domain_error("repulsive_existence_threshold: a > 0");
    return std::sqrt(2.0 * g_eff / (a * mu));
}

} // namespace nlse
