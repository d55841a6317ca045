#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "spintex/bloch.hpp"
#include "spintex/spinor_field.hpp"

namespace spintex {

/// Spin state conditioned on passage through an aperture window: reduced 2x2
/// density matrix in the (|up>, |down>) basis, the probability of passing,
/// and the (possibly sub-unit) Bloch vector.
struct ConditionalState {
    std::array<std::array<Complex, 2>, 2> rho{};
    double passage_probability = 0.0;
    Vec3 bloch{0.0, 0.0, 0.0};

    // trace(rho^2); equals (1 + |bloch|^2)/2 for a unit-trace Hermitian rho.
    double purity() const { return 0.5 * (1.0 + dot(bloch, bloch)); }
};

/// Post-select on the window [z_center - half_width, z_center + half_width).
///
/// rho_ij is the window integral of Psi_i Psi_j* (rectangle rule on the grid,
/// half-open so that disjoint windows tile the domain without double
/// counting), with the 1/sqrt(2) spinor weights applied and normalized to
/// unit trace. A window of half_width dz/2 around a grid point reproduces the
/// texture sample at that point exactly.
inline ConditionalState aperture_postselect(const SpinorField& state, double z_center,
                                            double half_width) {
    check_sizes(state);
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("aperture: half_width must be positive");
    }
    const SpatialGrid& grid = state.grid;
    const double lo = z_center - half_width;
    const double hi = z_center + half_width;
    if (hi <= grid.z_min || lo >= grid.z_min + grid.dz * static_cast<double>(grid.n_points)) {
        throw std::domain_error("aperture: window does not overlap the grid, zero passage");
    }

    double m_pp = 0.0, m_mm = 0.0;
    Complex m_pm(0.0, 0.0);
    for (std::size_t k = 0; k < grid.n_points; ++k) {
        const double z = grid.z(k);
        if (z < lo || z >= hi) continue;
        m_pp += std::norm(state.psi_plus[k]);
        m_mm += std::norm(state.psi_minus[k]);
        m_pm += state.psi_plus[k] * std::conj(state.psi_minus[k]);
    }
    // spinor weights (1/sqrt(2))^2 fold into dz/2; they cancel in rho itself
    const double passage = (m_pp + m_mm) * 0.5 * grid.dz;
    if (passage < 1e-12) {
        throw std::domain_error("aperture: passage probability below 1e-12, state undefined");
    }

    ConditionalState cond;
    cond.passage_probability = passage;
    const double total = m_pp + m_mm;
    cond.rho[0][0] = m_pp / total;
    cond.rho[1][1] = m_mm / total;
    cond.rho[0][1] = m_pm / total;
    cond.rho[1][0] = std::conj(cond.rho[0][1]);
    cond.bloch = {2.0 * cond.rho[0][1].real(), 2.0 * cond.rho[1][0].imag(),
                  (cond.rho[0][0] - cond.rho[1][1]).real()};
    return cond;
}

/// Probability of measuring spin-up along a unit axis: (1 + axis.bloch)/2.
inline double measurement_probability(const ConditionalState& cond, const Vec3& axis) {
    if (std::abs(norm(axis) - 1.0) > 1e-9) {
        throw std::invalid_argument("measurement: axis must be a unit vector");
    }
    return 0.5 + 0.5 * dot(axis, cond.bloch);
}

struct ScanRow {
    double z_center = 0.0;
    double passage_probability = 0.0;
    Vec3 bloch{0.0, 0.0, 0.0};
    double purity = 0.0;
    bool valid = false;
};

/// Sweep the aperture over a list of hole positions. Rows whose conditional
/// state is undefined (no overlap, or passage below threshold) are marked
/// invalid instead of fabricated.
inline std::vector<ScanRow> scan_hole(const SpinorField& state,
                                      const std::vector<double>& z_centers, double half_width) {
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("scan_hole: half_width must be positive");
    }
    std::vector<ScanRow> rows;
    rows.reserve(z_centers.size());
    for (double zc : z_centers) {
        ScanRow row;
        row.z_center = zc;
        try {
            const ConditionalState cond = aperture_postselect(state, zc, half_width);
            row.passage_probability = cond.passage_probability;
            row.bloch = cond.bloch;
            row.purity = cond.purity();
            row.valid = true;
        } catch (const std::domain_error&) {
            row.valid = false;
        }
        rows.push_back(row);
    }
    return rows;
}

/// Draw n detector clicks along the given analyzer axis; returns the number
/// of spin-up results. Uniform deviates are built directly from the generator
/// words, so sequences are reproducible across standard libraries.
inline std::int64_t sample_clicks(const ConditionalState& cond, const Vec3& axis,
                                  std::int64_t n, std::mt19937_64& rng) {
    if (n < 0) {
        throw std::invalid_argument("sample_clicks: n must be nonnegative");
    }
    const double p = measurement_probability(cond, axis);
    std::int64_t ups = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < p) ++ups;
    }
    return ups;
}

}  // namespace spintex
