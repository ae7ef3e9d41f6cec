#pragma once

// The computations behind each command of the nlse tool, returning tables
// that the tool writes as CSV or JSON.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "delta_well.hpp"
#include "elliptic.hpp"
#include "oracle.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "shell_linear.hpp"
#include "shell_nonlinear.hpp"

namespace nlse {

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
    return out;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error(what);
}

} // namespace detail

struct BoundStateParams {
    double lambda = -0.2;
    double g = -1.0;
    double x_min = -10.0;
    double x_max = 10.0;
    int grid = 401;
    bool check = false;
};

inline Report cmd_bound_state(const BoundStateParams& prm) {
    detail::require(prm.grid >= 2, "bound-state: --grid must be >= 2");
    detail::require(prm.x_max > prm.x_min, "bound-state: need x-max > x-min");
    Report rep{"bound-state", {}, false, 0};
    const auto result = bound_state(prm.lambda, prm.g);
    auto& sum = rep.table("summary", {"key", "value"});
    sum.add({cell("lambda"), cell(prm.lambda)});
    sum.add({cell("g"), cell(prm.g)});

    if (const auto* none = std::get_if<NoBoundState>(&result)) {
        rep.no_solution = true;
        sum.add({cell("status"), cell("no-bound-state")});
        sum.add({cell("reason"), cell(none->reason)});
        sum.add({cell("lambda_c"), cell(none->critical.lambda_c)});
        sum.add({cell("mu_c"), cell(none->critical.mu_c)});
        sum.add({cell("g_c"), cell(none->critical.g_c)});
        return rep;
    }
    const auto& st = std::get<SolitonState>(result);
    sum.add({cell("status"), cell("bound")});
    sum.add({cell("family"), cell(to_string(st.family))});
    sum.add({cell("mu"), cell(st.mu)});
    sum.add({cell("k"), cell(st.k)});
    sum.add({cell("x0"), cell(st.x0)});
    sum.add({cell("norm"), cell(norm(st))});
    if (prm.check) {
        const double h = 1e-4;
        const auto n = static_cast<std::size_t>(std::llround((prm.x_max - prm.x_min) / h)) + 1;
        const auto samples = sample_uniform([&](double x) { return st.value(x); }, prm.x_min, h, n);
        const DeltaSite delta[] = {{0.0, prm.lambda}};
        const auto r = nlse_residual(samples, prm.x_min, h, st.mu, st.g, delta);
        sum.add({cell("check_max_residual"), cell(r.max_residual)});
        sum.add({cell("check_jump_defect"), cell(r.jump_defects.front())});
        if (!(r.max_residual < 1e-5)) ++rep.failures;
    }

    auto& wf = rep.table("wavefunction", {"x", "psi"});
    for (double x : detail::linspace(prm.x_min, prm.x_max, prm.grid)) {
        wf.add({cell(x), cell(st.value(x))});
    }
    return rep;
}

struct TransitionParams {
    double lambda_min = 0.0;
    double lambda_max = 0.6;
    int grid = 121;
};

/// x0 and norm per period for g = -1 across lambda_c = 1/4.
inline Report cmd_transition(const TransitionParams& prm) {
    detail::require(prm.grid >= 2, "transition: --grid must be >= 2");
    detail::require(prm.lambda_max > prm.lambda_min, "transition: need lambda-max > lambda-min");
    Report rep{"transition", {}, false, 0};
    auto& t = rep.table("transition", {"lambda", "regime", "x0", "norm_per_period", "period"});
    for (double lam : detail::linspace(prm.lambda_min, prm.lambda_max, prm.grid)) {
        if (lam == 0.25) {
            t.add({cell(lam), cell("critical-skipped"), {}, {}, {}});
            continue;
        }
        try {
            const auto d = transition_diagnostics(lam);
            t.add({cell(lam), cell(lam < 0.25 ? "bound" : "scattering"), cell(d.x0),
                   cell(d.norm_per_period), cell(d.period)});
        } catch (const NoSolutionError&) {
            t.add({cell(lam), cell("no-solution"), {}, {}, {}});
        }
    }
    return rep;
}

struct ShellLinearParams {
    double a = 1.0;
    double lambda = 10.0;
    int n_max = 5;
    double e_min = 0.01;
    double e_max = 30.0;
    int grid = 3000;
    int wave_grid = 601;
};

inline Report cmd_shell_linear(const ShellLinearParams& prm) {
    detail::require(prm.grid >= 2 && prm.wave_grid >= 2, "shell-linear: grids must be >= 2");
    detail::require(prm.e_min > 0.0 && prm.e_max > prm.e_min, "shell-linear: need 0 < E-min < E-max");
    detail::require(prm.n_max >= 1, "shell-linear: --n-max must be >= 1");
    const ShellConfig cfg(prm.a, prm.lambda);
    Report rep{"shell-linear", {}, false, 0};

    std::vector<SMatrixPole> poles;
    if (cfg.lambda != 0.0) poles = find_poles(cfg, prm.n_max);
    auto& pt = rep.table("poles", {"kind", "n", "k_re", "k_im", "E", "Gamma"});
    for (const auto& p : poles) {
        pt.add({cell(to_string(p.kind)), cell(p.n), cell(p.k.real()), cell(p.k.imag()),
                cell(p.E), cell(p.Gamma)});
    }

    const auto energies = detail::linspace(prm.e_min, prm.e_max, prm.grid);
    std::vector<double> ks;
    for (double e : energies) ks.push_back(std::sqrt(2.0 * e));
    std::vector<double> delta(ks.size(), 0.0);
    if (cfg.lambda != 0.0) delta = phase_shift_scan(cfg, ks);
    auto& rt = rep.table("amplitude_ratio", {"E", "ratio", "phase_shift"});
    for (std::size_t i = 0; i < energies.size(); ++i) {
        rt.add({cell(energies[i]), cell(amplitude_ratio_linear(cfg, energies[i])), cell(delta[i])});
    }

    const SMatrixPole* stable = nullptr;
    for (const auto& p : poles) {
        if (p.kind == PoleKind::Resonance && (!stable || p.Gamma < stable->Gamma)) stable = &p;
    }
    if (stable) {
        auto& wt = rep.table("resonance_wavefunction", {"x", "abs_psi_sq"});
        for (double x : detail::linspace(0.0, 3.0 * cfg.a, prm.wave_grid)) {
            wt.add({cell(x), cell(std::norm(linear_wavefunction(cfg, stable->k, x)))});
        }
    }
    return rep;
}

struct ShellScanParams {
    double a = 1.0;
    double lambda = 10.0;
    double g = 1.0; ///< magnitude; the sign follows each g_eff (negative for g_eff = 0)
    std::vector<double> g_eff = {0.0};
    double mu_min = 1.0;
    double mu_max = 80.0;
    int grid = 2000;
    bool check = false;
};

namespace detail {

// Matching defects and residuals of a matched shell solution on [0, 2a].
// The phase q x is only known to ~ q x eps, so the sampled values carry
// noise ~ A q x eps that a difference stencil amplifies by 1/h^2. The
// seven-point stencil keeps truncation (~ A q^8 h^6) small at the larger
// step h ~ 0.02/q, where the noise stays near 1e-7. h divides a so the
// shell sits on a node.
struct ShellCheck {
    double continuity;
    double jump;
    double residual;
    double step;
};

inline ShellCheck check_shell_solution(const MatchedShellSolution& s, double lambda) {
    const double q = std::max(s.left.rate(), s.right.rate());
    const double h = s.a / std::ceil(s.a / std::min(1e-3, 0.02 / q));
    const auto n = static_cast<std::size_t>(std::llround(2.0 * s.a / h)) + 1;
    const auto samples = sample_uniform([&](double x) { return s.value(x); }, 0.0, h, n);
    const DeltaSite delta[] = {{s.a, lambda}};
    const auto r = nlse_residual(samples, 0.0, h, s.mu, s.g, delta, Stencil::Sixth);
    return {s.continuity_defect, s.jump_defect, r.max_residual, h};
}

} // namespace detail

inline Report cmd_shell_scan(const ShellScanParams& prm) {
    detail::require(prm.grid >= 2, "shell-scan: --grid must be >= 2");
    detail::require(prm.mu_min >= kMinShellMu && prm.mu_max > prm.mu_min,
                    "shell-scan: need 1e-6 <= mu-min < mu-max");
    detail::require(prm.g > 0.0, "shell-scan: --g is a magnitude and must be positive");
    detail::require(!prm.g_eff.empty(), "shell-scan: no --g-eff values");
    const ShellConfig cfg(prm.a, prm.lambda);
    Report rep{"shell-scan", {}, false, 0};

    std::vector<ResonanceScan> scans;
    for (double ge : prm.g_eff) {
        const double g = ge > 0.0 ? prm.g : -prm.g;
        scans.push_back(scan_resonances(cfg, g, ge, prm.mu_min, prm.mu_max, prm.grid));
    }

    auto& st = rep.table("scan", {"g_eff", "mu", "ratio", "threshold"});
    for (const auto& s : scans) {
        for (std::size_t i = 0; i < s.mu_grid.size(); ++i) {
            const Cell thr = s.g_eff > 0.0
                                 ? cell(repulsive_existence_threshold(s.mu_grid[i], s.g_eff, cfg.a))
                                 : Cell{};
            st.add({cell(s.g_eff), cell(s.mu_grid[i]), cell(s.ratio[i]), thr});
        }
    }

    auto& rt = rep.table("resonances", {"g_eff", "n", "mu_n", "peak", "mu_less", "mu_greater",
                                        "width_delta", "width_fwhm", "mu_less_approx",
                                        "mu_greater_approx"});
    for (const auto& s : scans) {
        for (const auto& r : s.resonances) {
            Cell less_approx{}, greater_approx{};
            if (r.n >= 1) {
                greater_approx = cell(mu_greater_approx(cfg, r.n, s.g_eff));
                if (cfg.lambda != 0.0) less_approx = cell(mu_less_approx(cfg, r.n, s.g_eff));
            }
            rt.add({cell(s.g_eff), cell(r.n), cell(r.mu_n), cell(r.peak), cell(r.mu_less),
                    cell(r.mu_greater), cell(r.width_delta), cell(r.width_fwhm), less_approx,
                    greater_approx});
        }
    }

    if (prm.check) {
        auto& ct = rep.table("checks", {"g_eff", "mu", "continuity_defect", "jump_defect",
                                        "max_residual", "pass"});
        for (const auto& s : scans) {
            const double g = s.g_eff > 0.0 ? prm.g : -prm.g;
            for (std::size_t i = 0; i < s.mu_grid.size(); i += 100) {
                if (!s.ratio[i]) continue;
                const auto r = solve_shell(cfg, g, s.g_eff, s.mu_grid[i]);
                const auto& sol = std::get<MatchedShellSolution>(r);
                const auto c = detail::check_shell_solution(sol, cfg.lambda);
                const double scale = std::max(1.0, std::abs(sol.left.value(cfg.a)));
                const bool ok = std::abs(c.continuity) < 1e-9 * scale &&
                                std::abs(c.jump) < 1e-8 * scale && c.residual < 1e-6;
                if (!ok) ++rep.failures;
                ct.add({cell(s.g_eff), cell(s.mu_grid[i]), cell(c.continuity), cell(c.jump),
                        cell(c.residual), cell(ok)});
            }
        }
    }
    return rep;
}

/// Runs the independent numerical checks and tabulates them.
inline Report cmd_verify() {
    Report rep{"verify", {}, false, 0};
    auto& t = rep.table("checks", {"check", "value", "tolerance", "pass"});
    const auto record = [&](const std::string& name, double value, double tol) {
        const bool ok = std::abs(value) < tol;
        if (!ok) ++rep.failures;
        t.add({cell(name), cell(value), cell(tol), cell(ok)});
    };

    {
        const auto st = std::get<SolitonState>(bound_state(-0.2, -1.0));
        const double h = 1e-4;
        const auto samples = sample_uniform([&](double x) { return st.value(x); }, -15.0, h, 300001);
        const DeltaSite delta[] = {{0.0, -0.2}};
        const auto r = nlse_residual(samples, -15.0, h, st.mu, st.g, delta);
        record("bound-state residual (lambda=-0.2, g=-1)", r.max_residual, 1e-5);
        record("bound-state jump defect (lambda=-0.2, g=-1)", r.jump_defects.front(), 1e-6);
        record("bound-state norm - 1 (lambda=-0.2, g=-1)", norm(st) - 1.0, 1e-8);
    }
    {
        const ShellConfig cfg(1.0, 10.0);
        const double k = 3.0;
        const DeltaSite delta[] = {{1.0, 10.0}};
        const auto tr = shoot(0.5 * k * k, 0.0, delta, 3.0, 0.0, k, 1e-4);
        double dev = 0.0;
        for (std::size_t i = 0; i < tr.x.size(); ++i) {
            dev = std::max(dev, std::abs(tr.psi[i] - linear_wavefunction(cfg, k, tr.x[i])));
        }
        record("shooting vs linear shell wavefunction (k=3)", dev, 1e-8);

        const auto poles = find_poles(cfg, 4);
        const auto reduced = [&](std::complex<double> z) { return pole_condition(cfg, z) / z; };
        const int count = argument_principle_count(reduced, {0.0, 12.0, -3.0, 0.5}, 400);
        long in_box = std::count_if(poles.begin(), poles.end(), [](const SMatrixPole& p) {
            return p.k.real() < 12.0 && p.k.imag() > -3.0;
        });
        record("argument principle count - poles found", count - static_cast<double>(in_box), 0.5);
    }
    {
        const SolitonState st{-0.125, 0.5, 0.0, 0.0, -1.0, SolitonFamily::BrightSech};
        const double y0 = st.value(0.0);
        const double dy0 = st.slope(0.0);
        const auto tr = shoot(st.mu, -1.0, {}, 5.0, y0, dy0, 1e-3);
        double dev = 0.0;
        for (std::size_t i = 0; i < tr.x.size(); ++i) {
            dev = std::max(dev, std::abs(tr.psi[i] - st.value(tr.x[i])));
        }
        record("shooting vs free sech soliton", dev, 1e-7);
    }
    {
        const ShellConfig cfg(1.0, 10.0);
        const auto cn = match_at_shell(left_wave_for(10.0, -1.0, 0.3, WaveKind::Cn), cfg);
        const auto& s = std::get<MatchedShellSolution>(cn);
        const auto c = detail::check_shell_solution(s, cfg.lambda);
        record("cn shell continuity defect", c.continuity, 1e-9);
        record("cn shell jump defect", c.jump, 1e-8);
        record("cn shell residual", c.residual, 1e-6);

        const auto sn = solve_shell(cfg, 1.0, 2.0, 45.0);
        const auto& r = std::get<MatchedShellSolution>(sn);
        const auto d = detail::check_shell_solution(r, cfg.lambda);
        record("sn shell continuity defect", d.continuity, 1e-9);
        record("sn shell jump defect", d.jump, 1e-8);
        record("sn shell residual", d.residual, 1e-6);
        record("sn shell g_eff - 2", r.g_eff - 2.0, 1e-9);
    }
    {
        const double p = 0.5;
        const double quad = adaptive_simpson(
            [p](double t) { return 1.0 / std::sqrt(1.0 - p * std::sin(t) * std::sin(t)); }, 0.0,
            0.5 * std::numbers::pi, 1e-14);
        record("K(1/2) vs quadrature", complete_k(p) - quad, 1e-12);
    }
    return rep;
}

} // namespace nlse
