#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spintex/fft.hpp"
#include "spintex/spinor_field.hpp"

namespace spintex {

enum class Method { spectral, implicit };

inline const char* method_name(Method m) {
    return m == Method::spectral ? "spectral" : "implicit";
}

struct StepReport {
    std::int64_t steps_taken = 0;
    double final_time = 0.0;
    double max_norm_drift = 0.0;
    std::chrono::duration<double> wall_time{0.0};
};

namespace detail {

// Strang splitting: half potential phase, full kinetic step in transform
// space, half potential phase. The plus component sees potential -g z, so its
// phase factor is exp(+i g z dt/2); the minus component gets the conjugate.
class SpectralPropagator {
public:
    SpectralPropagator(const SpatialGrid& grid, double dt, double g)
        : plan_(grid.n_points) {
        const std::size_t n = grid.n_points;
        half_phase_plus_.resize(n);
        half_phase_minus_.resize(n);
        kinetic_phase_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = 0.5 * g * grid.z(k) * dt;
            half_phase_plus_[k] = {std::cos(a), std::sin(a)};
            half_phase_minus_[k] = std::conj(half_phase_plus_[k]);
        }
        const std::vector<double> ks = wavenumbers(grid);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = -0.5 * ks[j] * ks[j] * dt;
            kinetic_phase_[j] = {std::cos(a), std::sin(a)};
        }
    }

    void advance(std::vector<Complex>& psi, bool plus, std::vector<Complex>&) const {
        const auto& half = plus ? half_phase_plus_ : half_phase_minus_;
        const std::size_t n = psi.size();
        for (std::size_t k = 0; k < n; ++k) psi[k] *= half[k];
        plan_.forward(psi.data());
        for (std::size_t j = 0; j < n; ++j) psi[j] *= kinetic_phase_[j];
        plan_.inverse(psi.data());
        for (std::size_t k = 0; k < n; ++k) psi[k] *= half[k];
    }

private:
    FftPlan plan_;
    std::vector<Complex> half_phase_plus_, half_phase_minus_, kinetic_phase_;
};

// Cayley form (1 + i dt H/2) psi_new = (1 - i dt H/2) psi_old with H from
// second-order central differences and Dirichlet-zero ghost values. The
// left-hand matrix is constant, so the Thomas forward-elimination factors are
// computed once; each step is one tridiagonal multiply plus one solve.
class CrankNicolsonPropagator {
public:
    CrankNicolsonPropagator(const SpatialGrid& grid, double dt, double g) {
        const std::size_t n = grid.n_points;
        const double inv_dz2 = 1.0 / (grid.dz * grid.dz);
        off_a_ = Complex(0.0, -0.25 * dt * inv_dz2);  // i dt/2 * (-1/(2 dz^2))
        off_b_ = -off_a_;
        for (int s = 0; s < 2; ++s) {
            const double sign = (s == 0) ? +1.0 : -1.0;  // +1: plus branch, V = -g z
            Side& side = sides_[s];
            side.diag_b.resize(n);
            side.cprime.resize(n);
            side.rinv.resize(n);
            std::vector<Complex> diag_a(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double h_diag = inv_dz2 - sign * g * grid.z(k);
                diag_a[k] = Complex(1.0, 0.5 * dt * h_diag);
                side.diag_b[k] = Complex(1.0, -0.5 * dt * h_diag);
            }
            Complex denom = diag_a[0];
            side.rinv[0] = 1.0 / denom;
            side.cprime[0] = off_a_ * side.rinv[0];
            for (std::size_t k = 1; k < n; ++k) {
                denom = diag_a[k] - off_a_ * side.cprime[k - 1];
                side.rinv[k] = 1.0 / denom;
                side.cprime[k] = off_a_ * side.rinv[k];
            }
        }
    }

    void advance(std::vector<Complex>& psi, bool plus, std::vector<Complex>& scratch) const {
        const Side& side = sides_[plus ? 0 : 1];
        const std::size_t n = psi.size();
        scratch.resize(n);
        // rhs = (1 - i dt H/2) psi with zero ghosts
        scratch[0] = side.diag_b[0] * psi[0] + off_b_ * psi[1];
        for (std::size_t k = 1; k + 1 < n; ++k) {
            scratch[k] = side.diag_b[k] * psi[k] + off_b_ * (psi[k - 1] + psi[k + 1]);
        }
        scratch[n - 1] = side.diag_b[n - 1] * psi[n - 1] + off_b_ * psi[n - 2];
        // Thomas solve with the prefactored left-hand side
        psi[0] = scratch[0] * side.rinv[0];
        for (std::size_t k = 1; k < n; ++k) {
            psi[k] = (scratch[k] - off_a_ * psi[k - 1]) * side.rinv[k];
        }
        for (std::size_t k = n - 1; k-- > 0;) {
            psi[k] -= side.cprime[k] * psi[k + 1];
        }
    }

private:
    struct Side {
        std::vector<Complex> diag_b, cprime, rinv;
    };
    Side sides_[2];
    Complex off_a_, off_b_;
};

struct ComponentRun {
    double max_drift = 0.0;
    std::int64_t failed_step = -1;  // first step producing a non-finite norm
};

template <class Propagator>
ComponentRun run_component(const Propagator& prop, const SpatialGrid& grid,
                           std::vector<Complex>& psi, bool plus, std::int64_t steps) {
    ComponentRun result;
    std::vector<Complex> scratch;
    for (std::int64_t s = 1; s <= steps; ++s) {
        prop.advance(psi, plus, scratch);
        const double nrm = component_norm(grid, psi);
        if (!std::isfinite(nrm)) {
            result.failed_step = s;
            return result;
        }
        result.max_drift = std::max(result.max_drift, std::abs(nrm - 1.0));
    }
    return result;
}

template <class Propagator>
StepReport evolve_with(const Propagator& prop, SpinorField& state, std::int64_t steps,
                       double t_final) {
    const auto t0 = std::chrono::steady_clock::now();
    ComponentRun minus_run;
    // The two components never couple; run them on separate threads.
    std::thread worker([&] {
        minus_run = run_component(prop, state.grid, state.psi_minus, false, steps);
    });
    ComponentRun plus_run = run_component(prop, state.grid, state.psi_plus, true, steps);
    worker.join();
    for (const auto& [run, label] :
         {std::pair{plus_run, "psi_plus"}, std::pair{minus_run, "psi_minus"}}) {
        if (run.failed_step >= 0) {
            throw std::runtime_error("integration failure: non-finite " + std::string(label) +
                                     " at step " + std::to_string(run.failed_step));
        }
    }
    state.time += t_final;
    StepReport report;
    report.steps_taken = steps;
    report.final_time = state.time;
    report.max_norm_drift = std::max(plus_run.max_drift, minus_run.max_drift);
    report.wall_time = std::chrono::steady_clock::now() - t0;
    return report;
}

}  // namespace detail

/// Advance the state by t_final in uniform steps of dt. t_final must be an
/// integer multiple of dt (to 1e-12); t_final = 0 returns the input unchanged.
inline std::pair<SpinorField, StepReport> evolve(const SpinorField& state, double t_final,
                                                 double dt, double g, Method method) {
    check_sizes(state);
    if (!(dt > 0.0)) {
        throw std::invalid_argument("evolve: dt must be positive");
    }
    if (t_final < 0.0) {
        throw std::invalid_argument("evolve: t_final must be nonnegative");
    }
    const auto steps = static_cast<std::int64_t>(std::llround(t_final / dt));
    if (std::abs(static_cast<double>(steps) * dt - t_final) > 1e-12) {
        throw std::invalid_argument("evolve: t_final must be an integer multiple of dt");
    }
    SpinorField out = state;
    if (steps == 0) {
        return {std::move(out), StepReport{0, state.time, 0.0, {}}};
    }
    StepReport report;
    if (method == Method::spectral) {
        detail::SpectralPropagator prop(state.grid, dt, g);
        report = detail::evolve_with(prop, out, steps, t_final);
    } else {
        detail::CrankNicolsonPropagator prop(state.grid, dt, g);
        report = detail::evolve_with(prop, out, steps, t_final);
    }
    return {std::move(out), report};
}

/// Single step of dt; convenience wrapper over the same propagators.
inline SpinorField step(const SpinorField& state, double dt, double g, Method method) {
    return evolve(state, dt, dt, g, method).first;
}

}  // namespace spintex
