#include "delaycomp/observer.hpp"

#include "delaycomp/predictor.hpp"

#include <doctest.h>

#include <cmath>

using namespace delaycomp;

namespace {

Matrix sc(double v) { return Matrix::Constant(1, 1, v); }

const Matrix kA{{0.0, 1.0}, {0.0, 0.0}};
const Matrix kB{{0.0}, {1.0}};
const Matrix kC{{1.0, 0.0}};
const Matrix kF{{-3.0}, {-2.0}}; // places eig(A + F C) at {-1, -2}

} // namespace

TEST_CASE("precompute_gains") {
    SUBCASE("A = 0 gives state_gain F and constant kernel -CF") {
        const Matrix F = sc(-1.0);
        ObserverGains g = precompute_gains(Matrix::Zero(1, 1), sc(1.0), sc(1.0), F, 0.5, 20);
        CHECK(g.state_gain(0, 0) == doctest::Approx(-1.0));
        for (const auto& s : g.line_kernel.samples) CHECK(s(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("scalar a=1, c=1, f=-3, mu=0.5") {
        ObserverGains g = precompute_gains(sc(1.0), sc(1.0), sc(1.0), sc(-3.0), 0.5, 100);
        CHECK(g.state_gain(0, 0) == doctest::Approx(-3.0 * std::exp(0.5)).epsilon(1e-12));
        // kernel(x) = -c e^{a(mu-x)} f = 3 e^{0.5-x}
        CHECK(g.line_kernel.samples[0](0, 0) ==
              doctest::Approx(3.0 * std::exp(0.5)).epsilon(1e-12));
        CHECK(g.line_kernel.samples[100](0, 0) == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("non-detecting F is rejected") {
        // a + f c = 1 - 0 ... choose f so a + fc = +1
        CHECK_THROWS_AS(precompute_gains(sc(2.0), sc(1.0), sc(1.0), sc(-1.0), 0.5, 10),
                        std::domain_error);
    }
}

TEST_CASE("matched initial data stays matched") {
    const double mu = 0.5;
    const int M = 100;
    ObserverGains gains = precompute_gains(kA, kB, kC, kF, mu, M);
    Vector z0(2);
    z0 << 0.7, -0.3;
    DelayedOutputPlant plant(kA, kB, kC, z0, mu, M);
    // observer initialized to the exact plant state and history
    ObserverState obs{z0, plant.psi, 0.0};
    ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, 3.0);
    for (double e : traj.err_state_norm) CHECK(e <= 1e-10);
    for (double e : traj.err_line_norm) CHECK(e <= 1e-10);
}

TEST_CASE("single-cell scalar observer matches a hand-computed step") {
    // A = 0, C = 1, F = -1, line of one cell: e = y - psi_hat(mu),
    // zhat' = -e (state_gain = e^{0} F = -1, innovation enters with -gain)
    const double dt = 0.01;
    ObserverGains gains = precompute_gains(Matrix::Zero(1, 1), sc(1.0), sc(1.0), sc(-1.0),
                                           dt, 1);
    ObserverState obs{Vector::Zero(1), DelayLine(Grid(dt, 1), 1), 0.0};
    const double y = 2.0;
    observer_step(gains, obs, Vector::Constant(1, y), Vector::Zero(1));
    // innovation e = 2; A = 0 so RK4 reduces to zhat += dt * (-(-1)*2) = 2 dt
    CHECK(obs.z_hat(0) == doctest::Approx(2.0 * dt).epsilon(1e-12));
    // head was re-anchored to C zhat, then the source (kernel = +1) added dt*e
    CHECK(obs.psi_hat.head()(0) == doctest::Approx(2.0 * dt + dt * 2.0).epsilon(1e-12));
}

TEST_CASE("observer error decays for a decaying plant") {
    // zero input, nonzero estimate error only
    const double mu = 0.4;
    const int M = 200;
    ObserverGains gains = precompute_gains(kA, kB, kC, kF, mu, M);
    Vector z0 = Vector::Zero(2);
    DelayedOutputPlant plant(kA, kB, kC, z0, mu, M);
    Vector zh(2);
    zh << 1.0, -1.0;
    ObserverState obs{zh, DelayLine(Grid(mu, M), 1), 0.0};
    ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, 12.0);
    CHECK(traj.err_state_norm.back() < 1e-3 * traj.err_state_norm.front());
}

TEST_CASE("fitted error decay rate tracks the slowest eigenvalue of A + FC") {
    const double mu = 0.5;
    const int M = 250;
    ObserverGains gains = precompute_gains(kA, kB, kC, kF, mu, M);
    Vector z0(2);
    z0 << 1.0, 0.5;
    DelayedOutputPlant plant(kA, kB, kC, z0, mu, M);
    ObserverState obs{Vector::Zero(2), DelayLine(Grid(mu, M), 1), 0.0};
    ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, 15.0);
    const double rate = -decay_rate_estimate(traj.t, traj.err_state_norm, mu + 2.0, 15.0);
    CHECK(rate == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("transformed line error vanishes once the delay is flushed") {
    const double mu = 0.5;
    const int M = 250;
    const double dt = mu / M;
    ObserverGains gains = precompute_gains(kA, kB, kC, kF, mu, M);
    Vector z0(2);
    z0 << 1.0, 0.5;
    DelayedOutputPlant plant(kA, kB, kC, z0, mu, M);
    ObserverState obs{Vector::Zero(2), DelayLine(Grid(mu, M), 1), 0.0};
    ErrorTrajectory traj = simulate_with_plant(gains, plant, obs, 4.0);
    for (size_t i = 0; i < traj.t.size(); ++i) {
        if (traj.t[i] > mu + dt / 2) {
            CHECK(traj.transformed_line_norm[i] <= 1e-12 + 10.0 * dt);
        }
    }
}

TEST_CASE("mismatched clocks are rejected") {
    const double mu = 0.5;
    ObserverGains gains = precompute_gains(kA, kB, kC, kF, mu, 100);
    DelayedOutputPlant plant(kA, kB, kC, Vector::Zero(2), mu, 100);
    ObserverState obs{Vector::Zero(2), DelayLine(Grid(mu, 200), 1), 0.0};
    CHECK_THROWS_AS(simulate_with_plant(gains, plant, obs, 1.0), std::invalid_argument);
}
