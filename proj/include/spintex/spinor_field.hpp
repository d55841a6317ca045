#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "spintex/grid.hpp"

namespace spintex {

using Complex = std::complex<double>;

/// Two-component spinor wavefunction sampled on a grid at one instant.
///
/// psi_plus weights the |up> basis state, psi_minus the |down> one. Each
/// component is kept normalized to 1 on its own; the physical spinor is
/// (psi_plus |up> + psi_minus |down>) / sqrt(2), and the 1/sqrt(2) weights
/// are carried symbolically, never stored.
struct SpinorField {
    SpatialGrid grid;
    std::vector<Complex> psi_plus;
    std::vector<Complex> psi_minus;
    double time = 0.0;
};

inline double component_norm(const SpatialGrid& grid, std::span<const Complex> psi) {
    double acc = 0.0;
    for (const Complex& c : psi) acc += std::norm(c);
    return acc * grid.dz;
}

inline void check_sizes(const SpinorField& state) {
    if (state.psi_plus.size() != state.grid.n_points ||
        state.psi_minus.size() != state.grid.n_points) {
        throw std::invalid_argument("spinor field: component length does not match grid");
    }
}

/// Gaussian initial condition exp(-z^2)/(pi/2)^(1/4) in both components.
/// The two component arrays are bitwise identical at t = 0.
inline SpinorField initial_state(const SpatialGrid& grid) {
    SpinorField state;
    state.grid = grid;
    state.time = 0.0;
    state.psi_plus.resize(grid.n_points);
    const double amp = 1.0 / std::pow(std::numbers::pi / 2.0, 0.25);
    for (std::size_t k = 0; k < grid.n_points; ++k) {
        const double z = grid.z(k);
        state.psi_plus[k] = Complex(amp * std::exp(-z * z), 0.0);
    }
    state.psi_minus = state.psi_plus;
    return state;
}

}  // namespace spintex
