#include "delaycomp/verify.hpp"

#include "delaycomp/fd_wave.hpp"
#include "delaycomp/observer.hpp"
#include "delaycomp/operator_maps.hpp"
#include "delaycomp/predictor.hpp"
#include "delaycomp/wave_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace delaycomp {

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen from the reference wave closed-loop run at N = 64, dx = 5e-4
// (see wave_closed_loop_decay_ratio); production runs must reproduce this
// four-second energy contraction ratio within 10%.
constexpr double kWaveDecayRatioRef = 0.07134460069;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Matrix scalar_mat(double v) { return Matrix::Constant(1, 1, v); }

double bump_m(double s) { return (s >= 0.3 && s <= 0.8) ? 1.0 : 0.0; }

struct P1Result {
    Trajectory traj;
    double max_rel_err = 0.0;
    PredictorConfig cfg;
    ClosedLoopState final_state;
};

// Scalar exact-compensation benchmark: a = b = 1, k = -2, tau = 1,
// dt = dx = 1e-3.
P1Result run_p1() {
    const int M = 1000;
    PredictorConfig cfg(scalar_mat(1.0), scalar_mat(1.0), scalar_mat(-2.0), 1.0, M);
    ClosedLoopState state{Vector::Constant(1, 1.0), DelayLine(Grid(1.0, M), 1), 0.0};
    Trajectory traj = simulate(cfg, state, 10.0);

    const double z_tau = traj.z[M](0); // value at t = tau = 1
    double max_rel = 0.0;
    for (size_t i = M; i < traj.t.size(); ++i) {
        const double ref = std::exp(-(traj.t[i] - 1.0)) * z_tau;
        max_rel = std::max(max_rel, std::abs(traj.z[i](0) - ref) / std::abs(ref));
    }
    return {std::move(traj), max_rel, std::move(cfg), std::move(state)};
}

} // namespace

std::vector<ResidualRow> sylvester_convergence_table() {
    std::vector<ResidualRow> rows;
    const double tau = 1.0;
    for (int M : {250, 500, 1000}) {
        InputMap map(scalar_mat(1.0), scalar_mat(1.0), tau, M);
        const Grid& g = map.grid;
        std::vector<double> f1(g.nodes()), df1(g.nodes());
        std::vector<double> f2(g.nodes()), df2(g.nodes());
        for (int i = 0; i <= M; ++i) {
            const double x = g.node(i);
            f1[i] = x;
            df1[i] = 1.0;
            f2[i] = x * std::sin(kPi * x / tau);
            df2[i] = std::sin(kPi * x / tau) + x * (kPi / tau) * std::cos(kPi * x / tau);
        }
        rows.push_back({"sylvester_input_linear", M,
                        sylvester_residual_input(map, f1, df1).residual});
        rows.push_back({"sylvester_input_sine", M,
                        sylvester_residual_input(map, f2, df2).residual});

        OutputMap omap(Matrix{{0.0, 1.0}, {-1.0, 0.0}}, Matrix{{1.0, 0.5}}, 0.8, M);
        Vector z(2);
        z << 1.0, -0.5;
        rows.push_back({"sylvester_output_rotation", M, sylvester_residual_output(omap, z)});
    }
    for (int M : {2000}) {
        InputMap scal(scalar_mat(1.0), scalar_mat(1.0), tau, M);
        rows.push_back({"smoothing_scalar", M,
                        smoothing_identity_check(scal, Vector::Constant(1, 1.0))});
        InputMap rot(Matrix{{0.0, 1.0}, {-1.0, 0.0}}, Matrix{{1.0}, {0.0}}, tau, M);
        Vector u = Vector::Constant(1, 1.0);
        rows.push_back({"smoothing_rotation", M, smoothing_identity_check(rot, u)});
    }
    return rows;
}

double wave_closed_loop_decay_ratio(int modes, int line_steps) {
    const double tau = 0.4;
    WaveModal init = modal_from_profiles([](double s) { return s * s; },
                                         [](double) { return 0.0; }, modes);
    WaveTrajectory traj = simulate_wave_closed_loop(init, 0.5, tau, line_steps, 44.0);
    const double dt = tau / line_steps;
    const int shift = static_cast<int>(std::llround(4.0 / dt));
    const int last = static_cast<int>(std::llround(40.0 / dt));
    double rho = 0.0;
    for (int i = 0; i <= last; ++i) {
        if (traj.energy[i] > 1e-300) {
            rho = std::max(rho, traj.energy[i + shift] / traj.energy[i]);
        }
    }
    return rho;
}

std::vector<CriterionResult> run_acceptance_criteria() {
    std::vector<CriterionResult> out;

    // ---- P1: exact compensation on the scalar benchmark -------------------
    const P1Result p1 = run_p1();
    out.push_back({"P1 exact compensation", p1.max_rel_err < 1e-3,
                   "max rel err " + fmt(p1.max_rel_err) + " (tol 1e-3)"});

    // ---- P2: input Sylvester residual convergence -------------------------
    {
        const auto rows = sylvester_convergence_table();
        auto residual = [&](const std::string& name, int M) {
            for (const auto& r : rows) {
                if (r.check_name == name && r.grid_steps == M) return r.residual;
            }
            return -1.0;
        };
        bool pass = true;
        double min_order = 1e9;
        double worst_abs = 0.0;
        for (const std::string name : {"sylvester_input_linear", "sylvester_input_sine"}) {
            const double r250 = residual(name, 250);
            const double r500 = residual(name, 500);
            const double r1000 = residual(name, 1000);
            min_order = std::min({min_order, std::log2(r250 / r500), std::log2(r500 / r1000)});
            worst_abs = std::max(worst_abs, r1000);
        }
        pass = min_order >= 1.0 && worst_abs < 1e-3;
        out.push_back({"P2 input Sylvester convergence", pass,
                       "min order " + fmt(min_order) + ", residual@1000 " + fmt(worst_abs)});
    }

    // ---- P3: gain identities ---------------------------------------------
    {
        const auto rows = sylvester_convergence_table();
        double worst_smoothing = 0.0;
        for (const auto& r : rows) {
            if (r.check_name.starts_with("smoothing")) {
                worst_smoothing = std::max(worst_smoothing, r.residual);
            }
        }
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst_tail = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            Matrix A(3, 3), C(1, 3);
            for (int i = 0; i < 9; ++i) A(i / 3, i % 3) = dist(rng);
            for (int i = 0; i < 3; ++i) C(0, i) = dist(rng);
            Vector z(3);
            for (int i = 0; i < 3; ++i) z(i) = dist(rng);
            const double mu = 0.7;
            OutputMap map(A, C, mu, 400);
            const Vector tail = apply_observability_map(map, z).tail();
            const Vector ref = -C * mat_exp(A, -mu) * z;
            worst_tail = std::max(worst_tail, (tail - ref).norm());
        }
        const bool pass = worst_smoothing < 1e-6 && worst_tail < 1e-10;
        out.push_back({"P3 gain identities", pass,
                       "smoothing " + fmt(worst_smoothing) + " (tol 1e-6), tail " +
                           fmt(worst_tail) + " (tol 1e-10)"});
    }

    // ---- P4: S-transform decoupling along the P1 trajectory ---------------
    {
        const int M = 1000;
        const double dt = 1e-3;
        PredictorConfig cfg(scalar_mat(1.0), scalar_mat(1.0), scalar_mat(-2.0), 1.0, M);
        InputMap map(cfg.A, cfg.B, cfg.tau, M);
        const double exp_neg = std::exp(-1.0); // e^{-A tau} B, scalar
        ClosedLoopState state{Vector::Constant(1, 1.0), DelayLine(Grid(1.0, M), 1), 0.0};
        double ztil =
            state.z(0) + apply_controllability_map_shift_aligned(map, state.phi)(0);
        double max_res = 0.0;
        const int nsteps = 10000;
        for (int n = 0; n < nsteps; ++n) {
            const double u = predictor_feedback(cfg, state)(0);
            const double drift = ztil + exp_neg * u; // A ztil + e^{-A tau} B u, A = 1
            closed_loop_step(cfg, state);
            const double ztil_next =
                state.z(0) + apply_controllability_map_shift_aligned(map, state.phi)(0);
            max_res = std::max(max_res, std::abs((ztil_next - ztil) / dt - drift));
            ztil = ztil_next;
        }
        const double tol = 5.0 * (dt + map.grid.spacing);
        out.push_back({"P4 S-transform decoupling", max_res < tol,
                       "max residual " + fmt(max_res) + " (tol " + fmt(tol) + ")"});
    }

    // ---- P5: wave closed-loop contraction ---------------------------------
    {
        // demo-scale contraction plus regression pinning: the reference-grade
        // run (N = 64, dx = 5e-4) must keep reproducing the frozen ratio
        const double rho = wave_closed_loop_decay_ratio(32, 400);
        const double rho_ref = wave_closed_loop_decay_ratio(64, 800);
        const bool pass =
            rho < 1.0 &&
            std::abs(rho_ref - kWaveDecayRatioRef) <= 0.10 * kWaveDecayRatioRef;
        out.push_back({"P5 wave closed-loop decay", pass,
                       "rho " + fmt(rho) + ", reference-grade rho " + fmt(rho_ref) +
                           " vs frozen " + fmt(kWaveDecayRatioRef)});
    }

    // ---- P6: observer decay rate ------------------------------------------
    Matrix A2{{0.0, 1.0}, {0.0, 0.0}};
    Matrix B2{{0.0}, {1.0}};
    Matrix C2{{1.0, 0.0}};
    Matrix F2{{-3.0}, {-2.0}}; // A + F C has eigenvalues {-1, -2}
    {
        const double mu = 0.5;
        const int M = 500;
        ObserverGains gains = precompute_gains(A2, B2, C2, F2, mu, M);
        Vector z0(2);
        z0 << 1.0, 0.5;
        DelayedOutputPlant plant(A2, B2, C2, z0, mu, M);
        ObserverState obs{Vector::Zero(2), DelayLine(Grid(mu, M), 1), 0.0};
        ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, 15.0);
        const double rate =
            -decay_rate_estimate(traj.t, traj.err_state_norm, mu + 2.0, 15.0);
        const bool pass = std::abs(rate - 1.0) <= 0.15;
        out.push_back({"P6 observer decay rate", pass,
                       "fitted rate " + fmt(rate) + " (target 1.0 +/- 15%)"});
    }

    // ---- P7: wave observer convergence ------------------------------------
    {
        const double mu = 0.3, k2 = 1.0;
        const int N = 32, M = 300;
        const double dt = mu / M;
        // initial error concentrated in the strongly observable low modes:
        // the bump shaping makes f_n tiny for n >= 3, so error placed there
        // is corrected too slowly for any fixed horizon to show convergence
        WaveModal plant0(N);
        plant0.c[0] = 1.0;
        plant0.c[2] = 0.02;
        ShapingCoeffs f = shaping_coeffs(sample_shaping(bump_m, 8192), plant0.omega);
        WaveObserverTrajectory traj =
            simulate_wave_observer(plant0, WaveModal(N), k2, f, mu, M, 30.0);
        const int i_mu = static_cast<int>(std::llround(mu / dt));
        const double ratio = traj.err_energy.back() / traj.err_energy[i_mu];
        double worst_line = 0.0;
        for (size_t i = 0; i < traj.t.size(); ++i) {
            if (traj.t[i] > mu + dt / 2) {
                worst_line = std::max(worst_line, traj.transformed_line_norm[i]);
            }
        }
        const bool pass = ratio <= 1e-2 && worst_line <= 10.0 * dt;
        out.push_back({"P7 wave observer convergence", pass,
                       "energy ratio " + fmt(ratio) + " (tol 1e-2), line " +
                           fmt(worst_line) + " (tol " + fmt(10.0 * dt) + ")"});
    }

    // ---- P8: cascade vanishing in the matrix observer ---------------------
    {
        const double mu = 0.5;
        const int M = 500;
        const double dt = mu / M;
        ObserverGains gains = precompute_gains(A2, B2, C2, F2, mu, M);
        Vector z0(2);
        z0 << 1.0, 0.5;
        DelayedOutputPlant plant(A2, B2, C2, z0, mu, M);
        ObserverState obs{Vector::Zero(2), DelayLine(Grid(mu, M), 1), 0.0};
        ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, 5.0);
        double worst = 0.0;
        for (size_t i = 0; i < traj.t.size(); ++i) {
            if (traj.t[i] > mu + dt / 2) {
                worst = std::max(worst, traj.transformed_line_norm[i]);
            }
        }
        const double tol = 1e-12 + 10.0 * dt;
        out.push_back({"P8 cascade vanishing", worst <= tol,
                       "max transformed line norm " + fmt(worst) + " (tol " + fmt(tol) + ")"});
    }

    // ---- P9: modal solver vs finite-difference oracle ---------------------
    {
        const int N = 64;
        auto z0 = [](double s) {
            return std::sin(kPi / 2 * s) + 0.3 * std::sin(5 * kPi / 2 * s);
        };
        auto v0 = [](double) { return 0.0; };
        auto u = [](double t) { return 0.5 * std::sin(2.0 * t); };

        WaveModal modal = modal_from_profiles(z0, v0, N);
        const double dt = 2.5e-4;
        const int nsteps = 4000; // to t = 1
        for (int n = 0; n < nsteps; ++n) {
            modal_step(modal, u((n + 0.5) * dt), dt); // midpoint-sampled forcing
        }

        FdWaveSolver fd(4000, 0.5, z0, v0);
        fd.advance_to(1.0, u);

        double acc = 0.0;
        for (int n = 0; n < N; ++n) {
            const double dc = modal.c[n] - fd.project_displacement(modal.omega[n]);
            const double dv = modal.cdot[n] - fd.project_velocity(modal.omega[n]);
            acc += 0.25 * (dv * dv + modal.omega[n] * modal.omega[n] * dc * dc);
        }
        const double discrepancy = std::sqrt(acc);
        out.push_back({"P9 modal vs finite-difference oracle", discrepancy < 1e-3,
                       "energy-norm discrepancy " + fmt(discrepancy) + " (tol 1e-3)"});
    }

    return out;
}

} // namespace delaycomp
