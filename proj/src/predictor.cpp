#include "delaycomp/predictor.hpp"

#include <cmath>
#include <stdexcept>

namespace delaycomp {

PredictorConfig::PredictorConfig(Matrix A_, Matrix B_, Matrix K_, double tau_, int steps)
    : A(std::move(A_)), B(std::move(B_)), K(std::move(K_)), tau(tau_),
      predict_gain(K * mat_exp(A, tau)), conv_kernel() {
    if (K.cols() != A.rows() || A.cols() != B.rows()) {
        throw std::invalid_argument("PredictorConfig: incompatible shapes");
    }
    conv_kernel = sample_exp_kernel(A, B, Grid(tau, steps), KernelDirection::Forward);
    for (auto& s : conv_kernel.samples) s = K * s;
}

Vector predictor_feedback(const PredictorConfig& cfg, const ClosedLoopState& state) {
    if (state.z.size() != cfg.A.rows()) {
        throw std::invalid_argument("predictor_feedback: state dim mismatch");
    }
    return cfg.predict_gain * state.z +
           trapezoid_integral(cfg.conv_kernel, state.phi.snapshot());
}

Vector rk4_affine_step(const Matrix& A, const Vector& z, const Vector& b, double dt) {
    const Vector k1 = A * z + b;
    const Vector k2 = A * (z + 0.5 * dt * k1) + b;
    const Vector k3 = A * (z + 0.5 * dt * k2) + b;
    const Vector k4 = A * (z + dt * k3) + b;
    return z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Feedback that is consistent with its own boundary sample: the head of phi
/// is the value being computed, so the trapezoid head term dx/2 * K B u is
/// moved to the left-hand side and the (small) linear system solved exactly.
/// On a line whose head already holds the current input this coincides with
/// predictor_feedback.
Vector consistent_feedback(const PredictorConfig& cfg, const Vector& z,
                           const DelayLine& phi) {
    const Grid& g = phi.grid();
    const int M = g.steps;
    Vector rhs = cfg.predict_gain * z;
    Vector interior = Vector::Zero(rhs.size());
    for (int i = 1; i < M; ++i) interior += cfg.conv_kernel.samples[i] * phi.sample(i);
    rhs += g.spacing * (interior + 0.5 * (cfg.conv_kernel.samples[M] * phi.sample(M)));
    const Matrix lhs = Matrix::Identity(rhs.size(), rhs.size()) -
                       0.5 * g.spacing * cfg.conv_kernel.samples[0];
    return lhs.fullPivLu().solve(rhs);
}

void make_head_consistent(const PredictorConfig& cfg, ClosedLoopState& state) {
    state.phi.set_head(consistent_feedback(cfg, state.z, state.phi));
}

void closed_loop_step(const PredictorConfig& cfg, ClosedLoopState& state) {
    const double dt = state.phi.grid().spacing;
    const int M = state.phi.grid().steps;
    // With a head-consistent line, node i holds u(t - i dx) exactly, so the
    // delayed plant input over this step runs from the tail to the node just
    // before it; holding their trapezoid average makes the coupling second
    // order. The new head is the feedback at the post-step time, solved
    // implicitly so the boundary sample stays consistent.
    const Vector b = cfg.B * (0.5 * (state.phi.tail() + state.phi.sample(M - 1)));
    state.z = rk4_affine_step(cfg.A, state.z, b, dt);
    state.phi.shift_in(Vector::Zero(state.phi.value_dim()));
    state.phi.set_head(consistent_feedback(cfg, state.z, state.phi));
    state.t += dt;
}

Trajectory simulate(const PredictorConfig& cfg, ClosedLoopState state, double horizon) {
    if (horizon < 0.0) {
        throw std::invalid_argument("simulate: horizon must be >= 0");
    }
    const double dt = state.phi.grid().spacing;
    const int nsteps = static_cast<int>(std::llround(horizon / dt));
    // anchor the boundary sample phi(0) = u(0) before stepping
    make_head_consistent(cfg, state);
    Trajectory traj;
    traj.t.reserve(nsteps + 1);
    auto log = [&](const Vector& u) {
        traj.t.push_back(state.t);
        traj.norm_z.push_back(state.z.norm());
        traj.norm_phi.push_back(state.phi.l2_norm());
        traj.u.push_back(u);
        traj.z.push_back(state.z);
    };
    log(predictor_feedback(cfg, state));
    for (int n = 0; n < nsteps; ++n) {
        closed_loop_step(cfg, state);
        log(predictor_feedback(cfg, state));
    }
    return traj;
}

double decay_rate_estimate(const std::vector<double>& t, const std::vector<double>& series,
                           double t_lo, double t_hi) {
    if (t.size() != series.size()) {
        throw std::invalid_argument("decay_rate_estimate: size mismatch");
    }
    double st = 0, sy = 0, stt = 0, sty = 0;
    int n = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(series[i] > 0.0)) {
            throw std::domain_error("decay_rate_estimate: non-positive value in fit window");
        }
        const double y = std::log(series[i]);
        st += t[i];
        sy += y;
        stt += t[i] * t[i];
        sty += t[i] * y;
        ++n;
    }
    if (n < 2) {
        throw std::invalid_argument("decay_rate_estimate: fit window too small");
    }
    const double denom = n * stt - st * st;
    if (denom == 0.0) {
        throw std::domain_error("decay_rate_estimate: degenerate time window");
    }
    return (n * sty - st * sy) / denom;
}

double decay_rate_estimate(const std::vector<double>& t, const std::vector<double>& series) {
    if (t.empty()) {
        throw std::invalid_argument("decay_rate_estimate: empty series");
    }
    const double t_mid = t.front() + 0.5 * (t.back() - t.front());
    return decay_rate_estimate(t, series, t_mid, t.back());
}

} // namespace delaycomp
