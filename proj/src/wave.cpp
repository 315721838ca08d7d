#include "delaycomp/wave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace delaycomp {

WaveModal::WaveModal(int N) {
    if (N < 1) {
        throw std::invalid_argument("WaveModal: need at least one mode");
    }
    omega.resize(N);
    c.assign(N, 0.0);
    cdot.assign(N, 0.0);
    for (int n = 0; n < N; ++n) {
        omega[n] = (2 * n + 1) * std::numbers::pi / 2.0;
    }
}

double WaveModal::displacement_at(double sigma) const {
    double z = 0.0;
    for (int n = 0; n < modes(); ++n) z += c[n] * std::sin(omega[n] * sigma);
    return z;
}

double WaveModal::velocity_at(double sigma) const {
    double zt = 0.0;
    for (int n = 0; n < modes(); ++n) zt += cdot[n] * std::sin(omega[n] * sigma);
    return zt;
}

namespace {

// Rotate (c, cdot) by w*dt around the equilibrium (ceq, cdot_eq) of the
// constantly forced oscillator cddot = -w^2 (c - ceq), with cdot_eq = -p from
// an additive term p in the displacement equation.
inline void rotate_mode(double& c, double& cdot, double w, double dt,
                        double ceq, double cdot_eq) {
    const double s = std::sin(w * dt);
    const double co = std::cos(w * dt);
    const double dc = c - ceq;
    const double dv = cdot - cdot_eq;
    c = ceq + dc * co + (dv / w) * s;
    cdot = cdot_eq - w * dc * s + dv * co;
}

} // namespace

void modal_step(WaveModal& state, double u, double dt) {
    for (int n = 0; n < state.modes(); ++n) {
        const double w = state.omega[n];
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        rotate_mode(state.c[n], state.cdot[n], w, dt, 2.0 * sign * u / (w * w), 0.0);
    }
}

std::vector<double> alpha_coeffs(const DelayLine& phi, const std::vector<double>& omega) {
    if (phi.value_dim() != 1) {
        throw std::invalid_argument("alpha_coeffs: scalar profile required");
    }
    const Grid& g = phi.grid();
    std::vector<double> out(omega.size(), 0.0);
    for (size_t n = 0; n < omega.size(); ++n) {
        double acc = 0.0;
        for (int i = 0; i <= g.steps; ++i) {
            const double w = (i == 0 || i == g.steps) ? 0.5 : 1.0;
            acc += w * std::cos(omega[n] * g.node(i)) * phi.sample(i)(0);
        }
        out[n] = acc * g.spacing;
    }
    return out;
}

std::vector<double> beta_coeffs(const DelayLine& phi, const std::vector<double>& omega) {
    if (phi.value_dim() != 1) {
        throw std::invalid_argument("beta_coeffs: scalar profile required");
    }
    const Grid& g = phi.grid();
    std::vector<double> out(omega.size(), 0.0);
    for (size_t n = 0; n < omega.size(); ++n) {
        double acc = 0.0;
        for (int i = 0; i <= g.steps; ++i) {
            const double w = (i == 0 || i == g.steps) ? 0.5 : 1.0;
            acc += w * std::sin(omega[n] * g.node(i)) * phi.sample(i)(0);
        }
        out[n] = acc * g.spacing;
    }
    return out;
}

double wave_predictor_feedback(const WaveModal& state, const DelayLine& phi,
                               double k1, double tau) {
    if (!(k1 > 0.0)) {
        throw std::invalid_argument("wave_predictor_feedback: k1 must be positive");
    }
    const std::vector<double> alpha = alpha_coeffs(phi, state.omega);
    double u = 0.0;
    for (int n = 0; n < state.modes(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        u += -2.0 * k1 * alpha[n];
        u += -k1 * sign * (state.cdot[n] * std::cos(state.omega[n] * tau) -
                           state.omega[n] * state.c[n] * std::sin(state.omega[n] * tau));
    }
    return u;
}

ShapingCoeffs shaping_coeffs(const std::vector<double>& m_samples,
                             const std::vector<double>& omega) {
    if (m_samples.size() < 2) {
        throw std::invalid_argument("shaping_coeffs: need at least two samples of m");
    }
    const Grid g(1.0, static_cast<int>(m_samples.size()) - 1);
    ShapingCoeffs out;
    out.f.resize(omega.size());
    for (size_t n = 0; n < omega.size(); ++n) {
        std::vector<double> integrand(m_samples.size());
        for (int i = 0; i <= g.steps; ++i) {
            integrand[i] = m_samples[i] * std::sin(omega[n] * g.node(i));
        }
        out.f[n] = 2.0 / omega[n] * trapezoid_scalar(g, integrand);
    }
    return out;
}

std::vector<double> sample_shaping(const std::function<double(double)>& m, int cells) {
    std::vector<double> out(cells + 1);
    for (int i = 0; i <= cells; ++i) out[i] = m(static_cast<double>(i) / cells);
    return out;
}

double wave_measurement(const WaveModal& state, const ShapingCoeffs& f) {
    if (f.f.size() != state.omega.size()) {
        throw std::invalid_argument("wave_measurement: coefficient count mismatch");
    }
    double y = 0.0;
    for (int n = 0; n < state.modes(); ++n) {
        y += state.cdot[n] * f.f[n] * state.omega[n] / 2.0;
    }
    return y;
}

SampledKernel wave_observer_line_kernel(const ShapingCoeffs& f,
                                        const std::vector<double>& omega,
                                        double k2, double mu, const Grid& grid) {
    SampledKernel k;
    k.grid = grid;
    k.samples.resize(grid.nodes());
    for (int i = 0; i <= grid.steps; ++i) {
        double v = 0.0;
        for (size_t n = 0; n < omega.size(); ++n) {
            v += f.f[n] * f.f[n] * omega[n] * omega[n] / 2.0 *
                 std::cos(omega[n] * (mu - grid.node(i)));
        }
        k.samples[i] = Matrix::Constant(1, 1, k2 * v);
    }
    return k;
}

void wave_observer_step(WaveModal& state_hat, DelayLine& psi_hat, double y, double u,
                        double k2, const ShapingCoeffs& f,
                        const SampledKernel& line_kernel, double mu, double dt) {
    if (!(k2 > 0.0)) {
        throw std::invalid_argument("wave_observer_step: k2 must be positive");
    }
    const double e = y - psi_hat.tail()(0);
    for (int n = 0; n < state_hat.modes(); ++n) {
        const double w = state_hat.omega[n];
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        // cdot_hat' = -w^2 c_hat + q, c_hat' = cdot_hat + p, both held per step
        const double p = k2 * f.f[n] * std::sin(w * mu) * e;
        const double q = k2 * f.f[n] * w * std::cos(w * mu) * e + 2.0 * sign * u;
        rotate_mode(state_hat.c[n], state_hat.cdot[n], w, dt, q / (w * w), -p);
    }
    psi_hat.shift_in(Vector::Constant(1, wave_measurement(state_hat, f)));
    psi_hat.add_distributed_source(line_kernel, Vector::Constant(1, e));
}

WaveModal modal_from_profiles(const std::function<double(double)>& z0,
                              const std::function<double(double)>& v0,
                              int N, int cells) {
    WaveModal state(N);
    const Grid g(1.0, cells);
    std::vector<double> zi(cells + 1), vi(cells + 1);
    for (int n = 0; n < N; ++n) {
        for (int i = 0; i <= cells; ++i) {
            const double s = std::sin(state.omega[n] * g.node(i));
            zi[i] = z0(g.node(i)) * s;
            vi[i] = v0(g.node(i)) * s;
        }
        state.c[n] = 2.0 * trapezoid_scalar(g, zi);
        state.cdot[n] = 2.0 * trapezoid_scalar(g, vi);
    }
    return state;
}

double energy(const WaveModal& state) {
    double e = 0.0;
    for (int n = 0; n < state.modes(); ++n) {
        e += state.cdot[n] * state.cdot[n] +
             state.omega[n] * state.omega[n] * state.c[n] * state.c[n];
    }
    return 0.25 * e;
}

double error_energy(const WaveModal& a, const WaveModal& b) {
    if (a.modes() != b.modes()) {
        throw std::invalid_argument("error_energy: mode count mismatch");
    }
    WaveModal d(a.modes());
    for (int n = 0; n < a.modes(); ++n) {
        d.c[n] = a.c[n] - b.c[n];
        d.cdot[n] = a.cdot[n] - b.cdot[n];
    }
    return energy(d);
}

} // namespace delaycomp
