#include "delaycomp/observer.hpp"

#include "delaycomp/predictor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace delaycomp {

ObserverGains precompute_gains(const Matrix& A, const Matrix& B, const Matrix& C,
                               const Matrix& F, double mu, int steps) {
    if (A.rows() != A.cols() || C.cols() != A.rows() || F.rows() != A.rows() ||
        F.cols() != C.rows() || B.rows() != A.rows()) {
        throw std::invalid_argument("precompute_gains: incompatible shapes");
    }
    const Matrix closed = A + F * C;
    const Eigen::EigenSolver<Matrix> eig(closed);
    const double max_re = eig.eigenvalues().real().maxCoeff();
    if (max_re >= -1e-9) {
        throw std::domain_error("precompute_gains: A + F C is not Hurwitz (F does not detect (A,C))");
    }
    ObserverGains g;
    g.A = A;
    g.B = B;
    g.C = C;
    g.F = F;
    g.mu = mu;
    g.state_gain = mat_exp(A, mu) * F;
    g.line_kernel = composed_observer_kernel(A, C, F, mu, Grid(mu, steps));
    return g;
}

void observer_step(const ObserverGains& gains, ObserverState& obs,
                   const Vector& y, const Vector& u) {
    if (y.size() != gains.C.rows() || u.size() != gains.B.cols()) {
        throw std::invalid_argument("observer_step: dim mismatch");
    }
    const double dt = obs.psi_hat.grid().spacing;
    const Vector e = y - obs.psi_hat.tail();
    const Vector b = gains.B * u - gains.state_gain * e;
    obs.z_hat = rk4_affine_step(gains.A, obs.z_hat, b, dt);
    obs.psi_hat.shift_in(gains.C * obs.z_hat);
    obs.psi_hat.add_distributed_source(gains.line_kernel, e);
    obs.t += dt;
}

DelayedOutputPlant::DelayedOutputPlant(Matrix A_, Matrix B_, Matrix C_, Vector z0,
                                       double mu, int steps)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), z(std::move(z0)),
      psi(Grid(mu, steps), static_cast<int>(C.rows())) {
    // start from a consistent history: psi(x,0) = C z(0)
    std::vector<Vector> hist(psi.grid().nodes(), Vector(C * z));
    psi = DelayLine(psi.grid(), std::move(hist));
}

void DelayedOutputPlant::step(const Vector& u) {
    const double dt = psi.grid().spacing;
    z = rk4_affine_step(A, z, B * u, dt);
    psi.shift_in(C * z);
    t += dt;
}

ErrorTrajectory simulate_with_plant(const ObserverGains& gains, DelayedOutputPlant plant,
                                    ObserverState obs, double horizon,
                                    const std::vector<Vector>* input_signal) {
    const double dt = plant.psi.grid().spacing;
    if (std::abs(dt - obs.psi_hat.grid().spacing) > 1e-15) {
        throw std::invalid_argument("simulate_with_plant: plant and observer clocks differ");
    }
    const int nsteps = static_cast<int>(std::llround(horizon / dt));
    const OutputMap pmap(gains.A, gains.C, gains.mu, obs.psi_hat.grid().steps);
    const Vector u_zero = Vector::Zero(gains.B.cols());

    ErrorTrajectory traj;
    auto log = [&](const Vector& innovation) {
        traj.t.push_back(plant.t);
        traj.err_state_norm.push_back((plant.z - obs.z_hat).norm());
        std::vector<Vector> diff(plant.psi.grid().nodes());
        for (int i = 0; i < plant.psi.grid().nodes(); ++i) {
            diff[i] = plant.psi.sample(i) - obs.psi_hat.sample(i);
        }
        const DelayLine err_line(plant.psi.grid(), std::move(diff));
        traj.err_line_norm.push_back(err_line.l2_norm());
        traj.innovation_norm.push_back(innovation.norm());
        const auto [ez, psi_check] =
            p_transform(Vector(plant.z - obs.z_hat), err_line, pmap, false);
        traj.transformed_line_norm.push_back(psi_check.l2_norm());
    };

    log(plant.measurement() - obs.psi_hat.tail());
    for (int n = 0; n < nsteps; ++n) {
        const Vector& u = (input_signal && n < static_cast<int>(input_signal->size()))
                              ? (*input_signal)[n]
                              : u_zero;
        const Vector y = plant.measurement();
        plant.step(u);
        observer_step(gains, obs, y, u);
        log(y - obs.psi_hat.tail());
    }
    return traj;
}

} // namespace delaycomp
