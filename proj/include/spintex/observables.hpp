#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spintex/fft.hpp"
#include "spintex/spinor_field.hpp"

namespace spintex {

/// Per-component diagnostics of a spinor field. Means and energies use
/// spectral (transform-space) derivatives, matching the accuracy of the
/// spectral propagator.
struct Observables {
    double mean_z_plus = 0.0;
    double mean_z_minus = 0.0;
    double mean_p_plus = 0.0;
    double mean_p_minus = 0.0;
    double energy_plus = 0.0;
    double energy_minus = 0.0;
    double norm_plus = 0.0;
    double norm_minus = 0.0;
};

namespace detail {

struct ComponentStats {
    double norm, mean_z, mean_p, energy;
};

// sign = +1 for the plus component (potential -g z), -1 for minus (+g z).
inline ComponentStats component_stats(const SpatialGrid& grid, std::span<const Complex> psi,
                                      double g, double sign, const FftPlan& plan,
                                      std::vector<Complex>& scratch, const char* label) {
    const std::size_t n = grid.n_points;
    double norm = 0.0, mean_z = 0.0, pot = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::norm(psi[k]);
        if (!std::isfinite(w)) {
            throw std::runtime_error(std::string("corrupt state: non-finite value in ") + label +
                                     " at index " + std::to_string(k));
        }
        const double z = grid.z(k);
        norm += w;
        mean_z += z * w;
        pot += sign * g * z * w;
    }
    norm *= grid.dz;
    mean_z *= grid.dz;
    pot *= grid.dz;

    scratch.assign(psi.begin(), psi.end());
    plan.forward(scratch.data());
    const std::vector<double> ks = wavenumbers(grid);
    // Parseval: dz * sum_j |psi_j|^2 = (dz/N) sum_k |psihat_k|^2
    double p1 = 0.0, kin = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(scratch[j]);
        p1 += ks[j] * w;
        kin += 0.5 * ks[j] * ks[j] * w;
    }
    const double spectral_weight = grid.dz / static_cast<double>(n);
    return {norm, mean_z, p1 * spectral_weight, kin * spectral_weight - pot};
}

}  // namespace detail

inline Observables observables(const SpinorField& state, double g) {
    check_sizes(state);
    detail::FftPlan plan(state.grid.n_points);
    std::vector<Complex> scratch;
    const auto plus =
        detail::component_stats(state.grid, state.psi_plus, g, +1.0, plan, scratch, "psi_plus");
    const auto minus =
        detail::component_stats(state.grid, state.psi_minus, g, -1.0, plan, scratch, "psi_minus");
    if (std::abs(plus.norm - 1.0) > 1e-6 || std::abs(minus.norm - 1.0) > 1e-6) {
        throw std::invalid_argument("observables: component norms deviate from 1 by more than 1e-6");
    }
    Observables o;
    o.mean_z_plus = plus.mean_z;
    o.mean_z_minus = minus.mean_z;
    o.mean_p_plus = plus.mean_p;
    o.mean_p_minus = minus.mean_p;
    o.energy_plus = plus.energy;
    o.energy_minus = minus.energy;
    o.norm_plus = plus.norm;
    o.norm_minus = minus.norm;
    return o;
}

}  // namespace spintex
