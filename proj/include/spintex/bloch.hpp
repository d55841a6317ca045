#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spintex/spinor_field.hpp"

namespace spintex {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Angle between two nonzero vectors, stable for nearly parallel inputs.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Spin direction of the spinor up|up> + down|down>.
///
/// Writing up = a + i c and down = b + i d, returns
///   (2(ab + cd), 2(ad - bc), a^2 - b^2 + c^2 - d^2) / (a^2 + b^2 + c^2 + d^2),
/// computed here as s1 + i s2 = 2 conj(up) down / n, s3 = (|up|^2 - |down|^2) / n.
/// The denominator makes the result a unit vector for any nonzero spinor.
inline Vec3 bloch_vector(Complex up, Complex down) {
    const double n = std::norm(up) + std::norm(down);
    if (n == 0.0) {
        throw std::domain_error("bloch_vector: zero spinor has no defined direction");
    }
    const Complex w = std::conj(up) * down;
    return {2.0 * w.real() / n, 2.0 * w.imag() / n, (std::norm(up) - std::norm(down)) / n};
}

/// One grid point of the spin texture. weight is the local combined density
/// (|psi_plus|^2 + |psi_minus|^2)/2; samples in the deep tails are flagged
/// unreliable because the direction there is noise-dominated.
struct BlochSample {
    double z = 0.0;
    Vec3 s{0.0, 0.0, 0.0};
    double weight = 0.0;
    bool reliable = false;
};

/// Spin texture of a state: one sample per grid point.
/// reliable = (weight >= epsilon * max weight); unreliable samples still get
/// a direction when the density is nonzero, (0,0,0) otherwise.
inline std::vector<BlochSample> texture(const SpinorField& state, double epsilon) {
    check_sizes(state);
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("texture: epsilon must be positive");
    }
    const std::size_t n = state.grid.n_points;
    std::vector<BlochSample> samples(n);
    double max_weight = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        samples[k].z = state.grid.z(k);
        samples[k].weight =
            0.5 * (std::norm(state.psi_plus[k]) + std::norm(state.psi_minus[k]));
        max_weight = std::max(max_weight, samples[k].weight);
    }
    const double threshold = epsilon * max_weight;
    for (std::size_t k = 0; k < n; ++k) {
        if (samples[k].weight > 0.0) {
            samples[k].s = bloch_vector(state.psi_plus[k], state.psi_minus[k]);
        }
        samples[k].reliable = samples[k].weight >= threshold;
    }
    return samples;
}

/// Azimuth/polar profile over the reliable samples.
/// azimuth is atan2(s2, s1) unwrapped outward from the reliable sample nearest
/// z = 0 (adjacent jumps kept below pi); polar is arccos(s3).
struct TwistProfile {
    std::vector<double> z;
    std::vector<double> azimuth;
    std::vector<double> polar;
};

inline TwistProfile twist_profile(const std::vector<BlochSample>& samples) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k].reliable) idx.push_back(k);
    }
    if (idx.size() < 2) {
        throw std::invalid_argument("twist_profile: need at least 2 reliable samples");
    }

    std::size_t anchor = 0;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (std::abs(samples[idx[i]].z) < std::abs(samples[idx[anchor]].z)) anchor = i;
    }

    auto raw = [&](std::size_t i) {
        const Vec3& s = samples[idx[i]].s;
        return std::atan2(s[1], s[0]);
    };
    auto wrap_to_pi = [](double a) {
        while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
        while (a < -std::numbers::pi) a += 2.0 * std::numbers::pi;
        return a;
    };

    TwistProfile profile;
    profile.z.resize(idx.size());
    profile.azimuth.resize(idx.size());
    profile.polar.resize(idx.size());
    profile.azimuth[anchor] = raw(anchor);
    for (std::size_t i = anchor + 1; i < idx.size(); ++i) {
        profile.azimuth[i] = profile.azimuth[i - 1] + wrap_to_pi(raw(i) - raw(i - 1));
    }
    for (std::size_t i = anchor; i-- > 0;) {
        profile.azimuth[i] = profile.azimuth[i + 1] + wrap_to_pi(raw(i) - raw(i + 1));
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
        profile.z[i] = samples[idx[i]].z;
        profile.polar[i] = std::acos(std::clamp(samples[idx[i]].s[2], -1.0, 1.0));
    }
    return profile;
}

}  // namespace spintex
