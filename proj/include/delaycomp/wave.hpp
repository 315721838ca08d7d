#pragma once

#include "delaycomp/delay_line.hpp"

#include <functional>
#include <vector>

namespace delaycomp {

/// Truncated modal state of the 1-D wave equation on (0,1) with z(0)=0 and
/// Neumann actuation z_sigma(1)=u: z = sum c_n sin(w_n sigma),
/// w_n = (2n+1) pi / 2. Projecting the forced equation onto sin(w_n sigma)
/// gives cddot_n = -w_n^2 c_n + 2 (-1)^n u.
struct WaveModal {
    std::vector<double> omega; // w_n, strictly increasing
    std::vector<double> c;     // displacement coefficients (= gamma_n)
    std::vector<double> cdot;  // velocity coefficients (= w_n zeta_n)

    explicit WaveModal(int N);

    int modes() const { return static_cast<int>(omega.size()); }

    /// Reconstruct (z, z_t) at a spatial point.
    double displacement_at(double sigma) const;
    double velocity_at(double sigma) const;
};

/// Sine coefficients f_n = (2/w_n) int_0^1 m(sigma) sin(w_n sigma) dsigma of
/// the measurement shaping function m.
struct ShapingCoeffs {
    std::vector<double> f;
};

/// Advance every mode by the exact harmonic-oscillator propagator with u held
/// constant: rotation by w_n dt around the forced equilibrium
/// (2 (-1)^n u / w_n^2, 0).
void modal_step(WaveModal& state, double u, double dt);

/// alpha_n = int_0^tau cos(w_n x) phi(x) dx for each mode (trapezoid rule).
std::vector<double> alpha_coeffs(const DelayLine& phi, const std::vector<double>& omega);

/// beta_n = int_0^tau sin(w_n x) phi(x) dx; diagnostic only, the feedback does
/// not use it.
std::vector<double> beta_coeffs(const DelayLine& phi, const std::vector<double>& omega);

/// Series predictor feedback:
/// u = -2 k1 sum alpha_n - k1 sum (-1)^n [cdot_n cos(w_n tau) - w_n c_n sin(w_n tau)].
double wave_predictor_feedback(const WaveModal& state, const DelayLine& phi,
                               double k1, double tau);

/// f_n from samples of m on a uniform quadrature grid over [0,1].
ShapingCoeffs shaping_coeffs(const std::vector<double>& m_samples,
                             const std::vector<double>& omega);

/// Samples m on the given number of cells over [0,1].
std::vector<double> sample_shaping(const std::function<double(double)>& m, int cells);

/// y = int_0^1 m(sigma) z_t(sigma) dsigma = sum cdot_n f_n w_n / 2.
double wave_measurement(const WaveModal& state, const ShapingCoeffs& f);

/// Distributed innovation kernel k2 sum (f_n^2 w_n^2 / 2) cos(w_n (mu - x))
/// sampled on the observer line grid.
SampledKernel wave_observer_line_kernel(const ShapingCoeffs& f,
                                        const std::vector<double>& omega,
                                        double k2, double mu, const Grid& grid);

/// One series-observer step: innovation from the pre-update tail, per-mode
/// exact propagator with the gain terms held constant, then shift / boundary
/// write / distributed source.
void wave_observer_step(WaveModal& state_hat, DelayLine& psi_hat, double y, double u,
                        double k2, const ShapingCoeffs& f,
                        const SampledKernel& line_kernel, double mu, double dt);

/// Truncated modal state of the profile pair (z0, v0): c_n = 2 int z0 sin(w_n s),
/// cdot_n = 2 int v0 sin(w_n s), by trapezoid rule on a uniform grid.
WaveModal modal_from_profiles(const std::function<double(double)>& z0,
                              const std::function<double(double)>& v0,
                              int N, int cells = 4096);

/// E = (1/4) sum (cdot_n^2 + w_n^2 c_n^2), the modal form of the wave energy
/// (1/2) int z_sigma^2 + z_t^2.
double energy(const WaveModal& state);

/// Modal error energy between two states on the same mode set.
double error_energy(const WaveModal& a, const WaveModal& b);

} // namespace delaycomp
