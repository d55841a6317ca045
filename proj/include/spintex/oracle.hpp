#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spintex/bloch.hpp"

namespace spintex::oracle {

/// Parameters of the closed-form solution. sigma0_sq is the initial density
/// variance of the Gaussian initial condition (1/4 for exp(-z^2) amplitude).
struct OracleParams {
    double g = 3.0;
    double sigma0_sq = 0.25;
};

enum class Branch { plus, minus };

namespace detail {

// Free evolution of the packet with initial amplitude (2a/pi)^(1/4) exp(-a xi^2),
// a = 1/(4 sigma0_sq). The complex width 1 + 2iat keeps Re > 0 for all real t,
// so the principal square root is smooth everywhere.
inline Complex free_packet(double xi, double t, double sigma0_sq) {
    const double a = 1.0 / (4.0 * sigma0_sq);
    const Complex w(1.0, 2.0 * a * t);
    const double amp = std::pow(2.0 * a / std::numbers::pi, 0.25);
    return amp / std::sqrt(w) * std::exp(-a * xi * xi / w);
}

// Constant-force solution: a gauge phase exp(i(g t z - g^2 t^3/6)) times the
// free packet evaluated in the uniformly accelerated frame z - g t^2/2.
// Analytic in t, no positivity check; the residual certificate differentiates
// through t = 0 with this entry point.
inline Complex exact_component_unchecked(double z, double t, double g, Branch branch,
                                         double sigma0_sq = 0.25) {
    if (branch == Branch::minus) z = -z;
    const Complex phase =
        std::exp(Complex(0.0, g * t * z - g * g * t * t * t / 6.0));
    return phase * free_packet(z - 0.5 * g * t * t, t, sigma0_sq);
}

}  // namespace detail

/// Closed-form solution of the scaled two-component equation for the Gaussian
/// initial condition; the minus branch is the mirror image of the plus branch.
inline Complex exact_component(double z, double t, double g, Branch branch) {
    if (t < 0.0) {
        throw std::invalid_argument("oracle: t must be nonnegative");
    }
    return detail::exact_component_unchecked(z, t, g, branch);
}

inline Complex exact_component(double z, double t, const OracleParams& params, Branch branch) {
    if (t < 0.0) {
        throw std::invalid_argument("oracle: t must be nonnegative");
    }
    if (!(params.sigma0_sq > 0.0)) {
        throw std::invalid_argument("oracle: sigma0_sq must be positive");
    }
    return detail::exact_component_unchecked(z, t, params.g, branch, params.sigma0_sq);
}

/// Spin direction of the closed-form solution at (z, t).
inline Vec3 exact_bloch(double z, double t, double g) {
    const Complex up = exact_component(z, t, g, Branch::plus);
    const Complex down = exact_component(z, t, g, Branch::minus);
    if (std::norm(up) + std::norm(down) < 1e-300) {
        throw std::domain_error("exact_bloch: density vanishes, direction undefined");
    }
    return bloch_vector(up, down);
}

}  // namespace spintex::oracle
