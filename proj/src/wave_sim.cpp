#include "delaycomp/wave_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace delaycomp {

WaveTrajectory simulate_wave_closed_loop(WaveModal state, double k1, double tau,
                                         int steps, double horizon) {
    const Grid grid(tau, steps);
    const double dt = grid.spacing;
    DelayLine phi(grid, 1);
    const int nsteps = static_cast<int>(std::llround(horizon / dt));

    WaveTrajectory traj;
    double t = 0.0;
    for (int n = 0; n <= nsteps; ++n) {
        const double u = wave_predictor_feedback(state, phi, k1, tau);
        traj.t.push_back(t);
        traj.energy.push_back(energy(state));
        traj.u.push_back(u);
        if (n == nsteps) break;
        modal_step(state, phi.tail()(0), dt);
        phi.shift_in(Vector::Constant(1, u));
        t += dt;
    }
    return traj;
}

WaveObserverTrajectory simulate_wave_observer(WaveModal plant, WaveModal observer,
                                              double k2, const ShapingCoeffs& f,
                                              double mu, int steps, double horizon,
                                              double u_amplitude) {
    if (plant.modes() != observer.modes()) {
        throw std::invalid_argument("simulate_wave_observer: mode count mismatch");
    }
    const Grid grid(mu, steps);
    const double dt = grid.spacing;
    const int nsteps = static_cast<int>(std::llround(horizon / dt));
    const SampledKernel line_kernel =
        wave_observer_line_kernel(f, plant.omega, k2, mu, grid);

    // consistent plant history psi(x,0) = C z(0); observer line starts at its
    // own boundary value
    DelayLine psi(grid, std::vector<Vector>(
                            grid.nodes(), Vector::Constant(1, wave_measurement(plant, f))));
    DelayLine psi_hat(grid, std::vector<Vector>(
                                grid.nodes(), Vector::Constant(1, wave_measurement(observer, f))));

    WaveObserverTrajectory traj;
    double t = 0.0;
    auto transformed_norm = [&]() {
        WaveModal err(plant.modes());
        for (int n = 0; n < plant.modes(); ++n) {
            err.c[n] = plant.c[n] - observer.c[n];
            err.cdot[n] = plant.cdot[n] - observer.cdot[n];
        }
        double acc = 0.0;
        for (int i = 0; i <= grid.steps; ++i) {
            const double diff = psi.sample(i)(0) - psi_hat.sample(i)(0) +
                                wave_observability_profile(err, f, grid.node(i));
            const double w = (i == 0 || i == grid.steps) ? 0.5 : 1.0;
            acc += w * diff * diff;
        }
        return std::sqrt(acc * grid.spacing);
    };

    for (int n = 0; n <= nsteps; ++n) {
        traj.t.push_back(t);
        traj.plant_energy.push_back(energy(plant));
        traj.err_energy.push_back(error_energy(plant, observer));
        traj.innovation.push_back(std::abs(psi.tail()(0) - psi_hat.tail()(0)));
        traj.transformed_line_norm.push_back(transformed_norm());
        if (n == nsteps) break;
        const double u = u_amplitude * std::sin(t);
        const double y = psi.tail()(0);
        modal_step(plant, u, dt);
        psi.shift_in(Vector::Constant(1, wave_measurement(plant, f)));
        wave_observer_step(observer, psi_hat, y, u, k2, f, line_kernel, mu, dt);
        t += dt;
    }
    return traj;
}

double wave_observability_profile(const WaveModal& z, const ShapingCoeffs& f, double x) {
    double v = 0.0;
    for (int n = 0; n < z.modes(); ++n) {
        const double w = z.omega[n];
        v -= f.f[n] * w / 2.0 *
             (z.c[n] * w * std::sin(w * x) + z.cdot[n] * std::cos(w * x));
    }
    return v;
}

} // namespace delaycomp
