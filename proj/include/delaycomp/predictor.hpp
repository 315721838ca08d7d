#pragma once

#include "delaycomp/delay_line.hpp"

#include <vector>

namespace delaycomp {

/// Precomputed gains of the predictor feedback
///   u = K e^{A tau} z + int_0^tau K e^{A x} B phi(x) dx.
struct PredictorConfig {
    Matrix A;
    Matrix B;
    Matrix K;
    double tau = 0.0;
    Matrix predict_gain;      // K e^{A tau}
    SampledKernel conv_kernel; // samples[i] = K e^{A i dx} B

    PredictorConfig(Matrix A, Matrix B, Matrix K, double tau, int steps);
};

/// Plant state plus actuator delay line; tail(phi) is the signal entering the plant.
struct ClosedLoopState {
    Vector z;
    DelayLine phi;
    double t = 0.0;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<double> norm_z;
    std::vector<double> norm_phi;
    std::vector<Vector> u;
    std::vector<Vector> z; // full state, for oracle comparisons
};

Vector predictor_feedback(const PredictorConfig& cfg, const ClosedLoopState& state);

/// Overwrite the head of phi with the feedback value that is consistent with
/// itself as the boundary sample phi(0) = u(t). On such a line
/// predictor_feedback reproduces the head exactly (fixed point), and the tail
/// holds u(t - tau) with no off-by-one-step staleness.
void make_head_consistent(const PredictorConfig& cfg, ClosedLoopState& state);

/// One closed-loop step at dt = dx: RK4 on zdot = A z + B phi(tau) with the
/// delayed input held at the trapezoid average of the two nodes bracketing
/// u(t - tau), exact shift, then the new head from the implicit feedback
/// solve. Second-order accurate; expects a head-consistent line (see
/// make_head_consistent), which every step re-establishes.
void closed_loop_step(const PredictorConfig& cfg, ClosedLoopState& state);

Trajectory simulate(const PredictorConfig& cfg, ClosedLoopState state, double horizon);

/// Least-squares slope of log(series) vs t over [t_lo, t_hi].
/// Throws if the window has fewer than two samples or non-positive values.
double decay_rate_estimate(const std::vector<double>& t, const std::vector<double>& series,
                           double t_lo, double t_hi);

/// Convenience overload: fit over the final half of the series.
double decay_rate_estimate(const std::vector<double>& t, const std::vector<double>& series);

/// One RK4 step of zdot = A z + b with constant b.
Vector rk4_affine_step(const Matrix& A, const Vector& z, const Vector& b, double dt);

} // namespace delaycomp
