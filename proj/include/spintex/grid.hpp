#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace spintex {

/// Uniform 1D grid on [z_min, z_max), symmetric about 0.
///
/// Points are z_k = z_min + k*dz for k = 0..n_points-1; z_max itself is
/// excluded (periodic convention used by the spectral propagator). With an
/// even, power-of-two point count and a symmetric domain, z = 0 is always
/// exactly on the grid at index n_points/2.
struct SpatialGrid {
    double z_min = 0.0;
    double z_max = 0.0;
    std::size_t n_points = 0;
    double dz = 0.0;

    double z(std::size_t k) const { return z_min + dz * static_cast<double>(k); }

    std::size_t zero_index() const { return n_points / 2; }

    std::vector<double> points() const {
        std::vector<double> zs(n_points);
        for (std::size_t k = 0; k < n_points; ++k) zs[k] = z(k);
        return zs;
    }

    bool operator==(const SpatialGrid&) const = default;
};

inline SpatialGrid make_grid(double z_min, double z_max, std::size_t n_points) {
    if (!(z_max > 0.0)) {
        throw std::invalid_argument("grid: z_max must be positive, got " + std::to_string(z_max));
    }
    if (z_min != -z_max) {
        throw std::invalid_argument("grid: domain must be symmetric about 0 (z_min = -z_max)");
    }
    if (n_points < 8 || !std::has_single_bit(n_points)) {
        throw std::invalid_argument("grid: n_points must be a power of two >= 8, got " +
                                    std::to_string(n_points));
    }
    SpatialGrid g;
    g.z_min = z_min;
    g.z_max = z_max;
    g.n_points = n_points;
    g.dz = (z_max - z_min) / static_cast<double>(n_points);
    return g;
}

}  // namespace spintex
