#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nlse/delta_well.hpp"
#include "nlse/oracle.hpp"
#include "nlse/shell_linear.hpp"

using namespace nlse;
using Catch::Matchers::WithinAbs;
using cplx = std::complex<double>;

namespace {

SolitonState bright_state() { return std::get<SolitonState>(bound_state(-0.2, -1.0)); }

std::vector<double> sample_state(const SolitonState& s, double x0, double h, std::size_t n) {
    return sample_uniform([&](double x) { return s.value(x); }, x0, h, n);
}

// Free bright soliton sech(x/2)/2 (g = -1, mu = -1/8) centred at 0.
double free_sech(double x) { return 0.5 / std::cosh(0.5 * x); }
double free_sech_slope(double x) { return -0.25 * std::tanh(0.5 * x) / std::cosh(0.5 * x); }

} // namespace

TEST_CASE("Residual of the bright bound state is small") {
    const auto s = bright_state();
    const double h = 1e-4;
    const auto psi = sample_state(s, -20.0, h, 400001);
    const DeltaSite d{0.0, s.lambda};
    const auto rep = nlse_residual(psi, -20.0, h, s.mu, s.g, std::span<const DeltaSite>(&d, 1));
    CHECK(rep.max_residual < 1e-5);
    CHECK(rep.grid_step == h);
    REQUIRE(rep.excluded_points.size() == 1);
    CHECK(rep.excluded_points[0] == 0.0);
    REQUIRE(rep.jump_defects.size() == 1);
    CHECK(std::abs(rep.jump_defects[0]) < 1e-7);

    const auto second =
        nlse_residual(psi, -20.0, h, s.mu, s.g, std::span<const DeltaSite>(&d, 1), Stencil::Second);
    CHECK(second.max_residual < 1e-5);
    CHECK(std::abs(second.jump_defects[0]) < 1e-6);
}

TEST_CASE("Residual without excluding the delta sees the kink") {
    const auto s = bright_state();
    const double h = 1e-3;
    const auto psi = sample_state(s, -5.0, h, 10001);
    CHECK(nlse_residual(psi, -5.0, h, s.mu, s.g).max_residual > 1.0);
}

TEST_CASE("Zero function has zero residual") {
    const std::vector<double> psi(1000, 0.0);
    CHECK(nlse_residual(psi, 0.0, 1e-3, 2.0, -1.0).max_residual == 0.0);
}

TEST_CASE("Perturbed state is detected") {
    const auto s = bright_state();
    const double h = 1e-4;
    auto psi = sample_state(s, -20.0, h, 400001);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : psi) v *= 1.0 + 0.01 * u(rng);
    const DeltaSite d{0.0, s.lambda};
    CHECK(nlse_residual(psi, -20.0, h, s.mu, s.g, std::span<const DeltaSite>(&d, 1)).max_residual >
          1e-3);
}

TEST_CASE("Coarse grids are rejected") {
    const std::vector<double> psi(10, 0.0);
    CHECK_THROWS_AS(nlse_residual(psi, 0.0, 0.02, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(nlse_residual(psi, 0.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("Off-grid delta reports a NaN jump defect") {
    const std::vector<double> psi(100, 0.0);
    const DeltaSite d{0.00123456, 1.0};
    const auto rep = nlse_residual(psi, 0.0, 1e-3, 1.0, 1.0, std::span<const DeltaSite>(&d, 1));
    REQUIRE(rep.jump_defects.size() == 1);
    CHECK(std::isnan(rep.jump_defects[0]));
}

TEST_CASE("Shooting through a linear shell reproduces the scattering solution") {
    const ShellConfig cfg(1.0, 10.0);
    const double k = 3.0;
    const DeltaSite d{1.0, 10.0};
    const auto t = shoot(0.5 * k * k, 0.0, std::span<const DeltaSite>(&d, 1), 3.0, 0.0, k, 1e-4);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        worst = std::max(worst, std::abs(t.psi[i] - linear_wavefunction(cfg, k, t.x[i])));
    }
    CHECK(worst < 1e-8);
    CHECK(t.x.back() == 3.0);
}

TEST_CASE("Shooting stays on the free soliton") {
    const auto t = shoot(-0.125, -1.0, {}, 5.0, free_sech(0.0), free_sech_slope(0.0), 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        worst = std::max(worst, std::abs(t.psi[i] - free_sech(t.x[i])));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("Shooting from rest gives zero") {
    const auto t = shoot(1.0, 1.0, {}, 2.0, 0.0, 0.0, 1e-2);
    for (double v : t.psi) CHECK(v == 0.0);
}

TEST_CASE("Shooting is fourth order") {
    const auto deviation = [](double h) {
        const auto t = shoot(-0.125, -1.0, {}, 5.0, free_sech(-2.0), free_sech_slope(-2.0), h, -2.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < t.x.size(); ++i) {
            worst = std::max(worst, std::abs(t.psi[i] - free_sech(t.x[i])));
        }
        return worst;
    };
    const double ratio = deviation(0.1) / deviation(0.05);
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("Shooting through the delta matches the bound state") {
    const auto s = bright_state();
    const DeltaSite d{0.0, s.lambda};
    const auto t = shoot(s.mu, s.g, std::span<const DeltaSite>(&d, 1), 6.0, s.value(-4.0),
                         s.slope(-4.0), 1e-3, -4.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        worst = std::max(worst, std::abs(t.psi[i] - s.value(t.x[i])));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("Unbounded growth is reported with its position") {
    try {
        shoot(-2.0, 0.0, {}, 1000.0, 1.0, 2.0, 1e-2);
        FAIL("expected ShootingOverflow");
    } catch (const ShootingOverflow& e) {
        CHECK(e.position() > 10.0);
        CHECK(e.position() < 1000.0);
    }
    CHECK_THROWS_AS(shoot(1.0, 1.0, {}, 0.0, 0.0, 1.0, 1e-2), std::domain_error);
}

TEST_CASE("Argument principle on explicit functions") {
    CHECK(argument_principle_count([](cplx k) { return k - cplx(1.0, -1.0); }, {0, 2, -2, 0}) == 1);
    CHECK(argument_principle_count([](cplx z) { return (z - 0.5) * (z + 0.5) * (z - cplx(0, 0.3)); },
                                   {-1, 1, -1, 1}) == 3);
    CHECK(argument_principle_count([](cplx z) { return std::exp(z); }, {-1, 1, -1, 1}) == 0);
    CHECK_THROWS_AS(argument_principle_count([](cplx z) { return z - 1.0; }, {1, 2, -1, 1}),
                    ContourTooClose);
    CHECK_THROWS_AS(argument_principle_count([](cplx z) { return z; }, {1, 1, -1, 1}),
                    std::domain_error);
}

TEST_CASE("Argument principle counts the shell resonances") {
    const ShellConfig cfg(1.0, 10.0);
    const auto f = [&](cplx k) { return pole_condition(cfg, k); };
    // Re k from 0.5 keeps the contour off the trivial root k = 0.
    const int count = argument_principle_count(f, {0.5, 12.0, -3.0, -1e-6}, 2000);
    const auto poles = find_poles(cfg, 4);
    int inside = 0;
    for (const auto& p : poles) {
        if (p.k.real() > 0.5 && p.k.real() < 12.0 && p.k.imag() > -3.0) ++inside;
    }
    CHECK(count == 3);
    CHECK(count == inside);
    CHECK(argument_principle_count(f, {100.0, 101.0, -0.1, 0.0}) == 0);
}

TEST_CASE("Residual stencils converge at their nominal order") {
    // steep soliton 4 sech(4x) (mu = -8) so truncation dominates roundoff
    const auto residual = [](double h, Stencil st) {
        const auto n = static_cast<std::size_t>(std::llround(4.0 / h)) + 1;
        const auto psi = sample_uniform([](double x) { return 4.0 / std::cosh(4.0 * x); }, -2.0, h, n);
        return nlse_residual(psi, -2.0, h, -8.0, -1.0, {}, st).max_residual;
    };
    CHECK_THAT(residual(0.01, Stencil::Second) / residual(0.005, Stencil::Second), WithinAbs(4.0, 0.2));
    CHECK_THAT(residual(0.01, Stencil::Fourth) / residual(0.005, Stencil::Fourth), WithinAbs(16.0, 1.0));
    CHECK_THAT(residual(0.01, Stencil::Sixth) / residual(0.005, Stencil::Sixth), WithinAbs(64.0, 6.0));
}

TEST_CASE("Sixth-order jump defect on the bound state") {
    const auto s = bright_state();
    const double h = 1e-3;
    const auto psi = sample_state(s, -20.0, h, 40001);
    const DeltaSite d{0.0, s.lambda};
    const auto rep =
        nlse_residual(psi, -20.0, h, s.mu, s.g, std::span<const DeltaSite>(&d, 1), Stencil::Sixth);
    CHECK(rep.max_residual < 1e-8);
    CHECK(std::abs(rep.jump_defects[0]) < 1e-9);
}
