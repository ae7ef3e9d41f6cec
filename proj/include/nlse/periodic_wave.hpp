#pragma once

// Periodic real solutions of the free stationary equation
//   -1/2 psi'' + g psi^3 = mu psi
// in terms of cn (attractive, g < 0) and sn (repulsive, g > 0).

#include <cmath>
#include <stdexcept>

#include "elliptic.hpp"

namespace nlse {

enum class WaveKind { Cn, Sn };

inline const char* to_string(WaveKind kind) { return kind == WaveKind::Cn ? "cn" : "sn"; }

/// psi(x) = amplitude * f(4 K(p) (x - shift) / period | p), f = cn or sn.
struct PeriodicWave {
    WaveKind kind;
    double amplitude;
    double period;
    double shift;
    EllipticModulus modulus;
    double mu;
    double g;

    /// 4 K(p) / L, the angular rate of the elliptic argument.
    double rate() const { return 4.0 * complete_k(modulus) / period; }

    double phase(double x) const { return rate() * (x - shift); }

    JacobiTriple jacobi_at(double x) const { return jacobi(phase(x), modulus); }

    double value(double x) const {
        const auto j = jacobi_at(x);
        return amplitude * (kind == WaveKind::Cn ? j.cn : j.sn);
    }

    double slope(double x) const {
        const auto j = jacobi_at(x);
        const double q = rate();
        return kind == WaveKind::Cn ? -amplitude * q * j.sn * j.dn
                                    : amplitude * q * j.cn * j.dn;
    }
};

/// cn wave with the period fixed by mu = 8 (1 - 2p) K(p)^2 / L^2 and the
/// amplitude by A = 4 sqrt(p) K(p) / (sqrt|g| L). Needs g < 0, p in [0, 1)
/// and sign(mu) = sign(1 - 2p).
inline PeriodicWave make_cn_wave(double mu, double p, double g, double shift = 0.0) {
    const EllipticModulus m(p);
    if (!(g < 0.0)) throw std::domain_error("make_cn_wave: cn waves need g < 0");
    if (p >= 1.0) throw std::domain_error("make_cn_wave: p = 1 is not periodic");
    const double s = 1.0 - 2.0 * p;
    if (!(s * mu > 0.0)) {
        throw std::domain_error("make_cn_wave: mu must have the sign of 1 - 2p");
    }
    const double q = std::sqrt(2.0 * mu / s);
    const double k = complete_k(m);
    return {WaveKind::Cn, std::sqrt(p) * q / std::sqrt(-g), 4.0 * k / q, shift, m, mu, g};
}

/// sn wave with mu = 8 (p + 1) K(p)^2 / L^2 and A = 4 sqrt(p) K(p) / (sqrt g L).
/// Needs g > 0, mu > 0, p in [0, 1).
inline PeriodicWave make_sn_wave(double mu, double p, double g, double shift = 0.0) {
    const EllipticModulus m(p);
    if (!(g > 0.0)) throw std::domain_error("make_sn_wave: sn waves need g > 0");
    if (!(mu > 0.0)) throw std::domain_error("make_sn_wave: sn waves need mu > 0");
    if (p >= 1.0) throw std::domain_error("make_sn_wave: p = 1 is not periodic");
    const double q = std::sqrt(2.0 * mu / (1.0 + p));
    const double k = complete_k(m);
    return {WaveKind::Sn, std::sqrt(p) * q / std::sqrt(g), 4.0 * k / q, shift, m, mu, g};
}

} // namespace nlse
