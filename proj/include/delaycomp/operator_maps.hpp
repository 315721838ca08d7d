#pragma once

#include "delaycomp/delay_line.hpp"

#include <optional>
#include <utility>

namespace delaycomp {

/// Controllability map S_tau of the input-delay transform: maps an input
/// profile g on [0, tau] to the state integral of e^{A(x-tau)} B g(x).
struct InputMap {
    Matrix A;
    Matrix B;
    double tau = 0.0;
    Grid grid;
    SampledKernel kernel; // samples[i] = e^{A(i dx - tau)} B

    InputMap(Matrix A, Matrix B, double tau, int steps);
};

/// Observability map Psi_mu of system (-A, -C): sends a state z to the output
/// profile x -> -C e^{-A x} z on [0, mu]. In the matrix case the extension
/// P_mu coincides with Psi_mu, so a single kernel serves both roles.
struct OutputMap {
    Matrix A;
    Matrix C;
    double mu = 0.0;
    Grid grid;
    SampledKernel kernel; // samples[i] = -C e^{-A i dx}

    OutputMap(Matrix A, Matrix C, double mu, int steps);
};

Vector apply_controllability_map(const InputMap& map, const DelayLine& phi);
DelayLine apply_observability_map(const OutputMap& map, const Vector& z);

/// S_tau discretized with full weight at every node except a half weight at
/// the tail. First-order accurate at the head, but its one-step difference
/// quotient along the exact shift reproduces the trapezoid-averaged tail
/// readout term exactly, so the transformed-dynamics residual stays
/// O(dt + dx) uniformly -- even across input discontinuities, where the
/// symmetric trapezoid endpoint weights would produce an O(1) spike at the
/// flush step. Used by the decoupling check.
Vector apply_controllability_map_shift_aligned(const InputMap& map, const DelayLine& phi);

/// Residual of the input-side Sylvester identity
///   A S_tau f - S_tau(-f') = B f(tau)
/// for a profile f with f(0) = 0. The derivative is the supplied analytic one
/// when available, otherwise second-order centered differences.
struct SylvesterResidual {
    double residual = 0.0;
    bool used_analytic_derivative = false;
};

SylvesterResidual sylvester_residual_input(
    const InputMap& map, const std::vector<double>& f,
    const std::optional<std::vector<double>>& f_prime = std::nullopt);

/// Interior residual of the output-side Sylvester identity
///   -(d/dx)(Psi_mu z) = Psi_mu (A z),
/// discrete L2 over interior nodes; the boundary part (Psi_mu z)(0) = -C z is
/// exact by construction and checked separately in tests.
double sylvester_residual_output(const OutputMap& map, const Vector& z);

/// || B u - A S_tau(1*u) - e^{-A tau} B u ||, the constant-profile form of
/// S_tau B_tau = e^{-A tau} B. Requires invertible A for the closed form.
double smoothing_identity_check(const InputMap& map, const Vector& u);

/// samples[i] = -C e^{A(mu - i dx)} F, the distributed innovation kernel of
/// the delayed-output observer.
SampledKernel composed_observer_kernel(const Matrix& A, const Matrix& C, const Matrix& F,
                                       double mu, const Grid& grid);

/// Block transform (z, phi) -> (z + S_tau phi, phi); inverse subtracts.
std::pair<Vector, DelayLine> s_transform(const Vector& z, const DelayLine& phi,
                                         const InputMap& map, bool inverse = false);

/// Block transform (z, psi) -> (z, psi + Psi_mu z); inverse subtracts.
std::pair<Vector, DelayLine> p_transform(const Vector& z, const DelayLine& psi,
                                         const OutputMap& map, bool inverse = false);

} // namespace delaycomp
