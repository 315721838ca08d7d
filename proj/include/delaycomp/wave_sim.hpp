#pragma once

#include "delaycomp/wave.hpp"

namespace delaycomp {

struct WaveTrajectory {
    std::vector<double> t;
    std::vector<double> energy;
    std::vector<double> u;
};

/// Closed loop of the modal wave plant with actuator delay tau: the plant is
/// driven by tail(phi) and the series predictor feedback enters at the head.
/// dt = tau / steps.
WaveTrajectory simulate_wave_closed_loop(WaveModal state, double k1, double tau,
                                         int steps, double horizon);

struct WaveObserverTrajectory {
    std::vector<double> t;
    std::vector<double> plant_energy;
    std::vector<double> err_energy;
    std::vector<double> innovation;
    /// Discrete L2 norm of the p-transformed line error (vanishing component).
    std::vector<double> transformed_line_norm;
};

/// Plant with delayed averaged-velocity measurement running in lockstep with
/// the series observer; the observer sees only y and u. dt = mu / steps.
WaveObserverTrajectory simulate_wave_observer(WaveModal plant, WaveModal observer0,
                                              double k2, const ShapingCoeffs& f,
                                              double mu, int steps, double horizon,
                                              double u_amplitude = 0.0);

/// (Psi_mu z)(x) = -C e^{-Ax} z in modal coordinates:
/// -sum (f_n w_n / 2)(c_n w_n sin(w_n x) + cdot_n cos(w_n x)).
double wave_observability_profile(const WaveModal& z, const ShapingCoeffs& f, double x);

} // namespace delaycomp
