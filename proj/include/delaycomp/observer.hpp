#pragma once

#include "delaycomp/delay_line.hpp"
#include "delaycomp/operator_maps.hpp"

#include <vector>

namespace delaycomp {

/// Gains of the delayed-output observer, precomputed from the base detection
/// gain F via state_gain = e^{A mu} F and the distributed innovation kernel
/// -C e^{A(mu - x)} F.
struct ObserverGains {
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix F;
    double mu = 0.0;
    Matrix state_gain;        // e^{A mu} F
    SampledKernel line_kernel; // samples[i] = -C e^{A(mu - i dx)} F
};

/// Builds the gains; rejects F unless A + F C is Hurwitz
/// (max real eigenvalue part < -1e-9).
ObserverGains precompute_gains(const Matrix& A, const Matrix& B, const Matrix& C,
                               const Matrix& F, double mu, int steps);

struct ObserverState {
    Vector z_hat;
    DelayLine psi_hat; // head is re-anchored to C z_hat every step
    double t = 0.0;
};

/// One observer step at dt = dx, driven only by the measurement y and the
/// plant input u: innovation from the pre-update tail, RK4 on
/// zhat_dot = A zhat - state_gain * e + B u, then shift / boundary write /
/// distributed source in that order.
void observer_step(const ObserverGains& gains, ObserverState& obs,
                   const Vector& y, const Vector& u);

/// Matrix plant with a measurement delay line: y(t) = C z(t - mu) realized as
/// the tail of a transport line fed by C z.
struct DelayedOutputPlant {
    Matrix A;
    Matrix B;
    Matrix C;
    Vector z;
    DelayLine psi;
    double t = 0.0;

    DelayedOutputPlant(Matrix A, Matrix B, Matrix C, Vector z0, double mu, int steps);

    Vector measurement() const { return psi.tail(); }
    void step(const Vector& u);
};

struct ErrorTrajectory {
    std::vector<double> t;
    std::vector<double> err_state_norm;
    std::vector<double> err_line_norm;
    std::vector<double> innovation_norm;
    /// Discrete L2 norm of the p-transformed line error psi_check; vanishes
    /// (up to splitting error) once t > mu.
    std::vector<double> transformed_line_norm;
};

/// Runs plant and observer in lockstep under the given input signal and logs
/// error norms. The observer sees only y and u.
ErrorTrajectory simulate_with_plant(const ObserverGains& gains, DelayedOutputPlant plant,
                                    ObserverState obs, double horizon,
                                    const std::vector<Vector>* input_signal = nullptr);

} // namespace delaycomp
