#include "delaycomp/operator_maps.hpp"

#include <cmath>
#include <stdexcept>

namespace delaycomp {

namespace {

DelayLine scalar_profile(const Grid& grid, const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != grid.nodes()) {
        throw std::invalid_argument("profile size does not match grid");
    }
    std::vector<Vector> samples(grid.nodes());
    for (int i = 0; i <= grid.steps; ++i) {
        samples[i] = Vector::Constant(1, f[i]);
    }
    return DelayLine(grid, std::move(samples));
}

} // namespace

InputMap::InputMap(Matrix A_, Matrix B_, double tau_, int steps)
    : A(std::move(A_)), B(std::move(B_)), tau(tau_), grid(tau_, steps),
      // e^{A(x - tau)} B = e^{-A (tau - x)} B, a reflected sweep of -A
      kernel(sample_exp_kernel(-A, B, grid, KernelDirection::Reflected)) {}

OutputMap::OutputMap(Matrix A_, Matrix C_, double mu_, int steps)
    : A(std::move(A_)), C(std::move(C_)), mu(mu_), grid(mu_, steps),
      kernel(sample_exp_kernel_left(-C, -A, grid, KernelDirection::Forward)) {}

Vector apply_controllability_map(const InputMap& map, const DelayLine& phi) {
    if (phi.grid() != map.grid) {
        throw std::invalid_argument("apply_controllability_map: grid mismatch");
    }
    return trapezoid_integral(map.kernel, phi.snapshot());
}

Vector apply_controllability_map_shift_aligned(const InputMap& map, const DelayLine& phi) {
    if (phi.grid() != map.grid) {
        throw std::invalid_argument("apply_controllability_map_shift_aligned: grid mismatch");
    }
    Vector acc = Vector::Zero(map.A.rows());
    for (int i = 0; i < map.grid.steps; ++i) {
        acc += map.kernel.samples[i] * phi.sample(i);
    }
    acc += 0.5 * (map.kernel.samples[map.grid.steps] * phi.sample(map.grid.steps));
    return map.grid.spacing * acc;
}

DelayLine apply_observability_map(const OutputMap& map, const Vector& z) {
    if (z.size() != map.A.rows()) {
        throw std::invalid_argument("apply_observability_map: dim mismatch");
    }
    std::vector<Vector> samples(map.grid.nodes());
    for (int i = 0; i <= map.grid.steps; ++i) {
        samples[i] = map.kernel.samples[i] * z;
    }
    return DelayLine(map.grid, std::move(samples));
}

SylvesterResidual sylvester_residual_input(
    const InputMap& map, const std::vector<double>& f,
    const std::optional<std::vector<double>>& f_prime) {
    if (map.B.cols() != 1) {
        throw std::invalid_argument("sylvester_residual_input: scalar input profiles only");
    }
    const Grid& g = map.grid;
    if (static_cast<int>(f.size()) != g.nodes()) {
        throw std::invalid_argument("sylvester_residual_input: profile/grid mismatch");
    }

    SylvesterResidual out;
    std::vector<double> df(g.nodes());
    if (f_prime) {
        if (f_prime->size() != f.size()) {
            throw std::invalid_argument("sylvester_residual_input: derivative size mismatch");
        }
        df = *f_prime;
        out.used_analytic_derivative = true;
    } else {
        // second-order differences, one-sided at the ends
        const double dx = g.spacing;
        const int M = g.steps;
        df[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
        for (int i = 1; i < M; ++i) df[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
        df[M] = (3.0 * f[M] - 4.0 * f[M - 1] + f[M - 2]) / (2.0 * dx);
    }

    const Vector lhs = map.A * apply_controllability_map(map, scalar_profile(g, f));
    std::vector<double> neg_df(df.size());
    for (size_t i = 0; i < df.size(); ++i) neg_df[i] = -df[i];
    const Vector shift_term = apply_controllability_map(map, scalar_profile(g, neg_df));
    const Vector rhs = map.B * f.back();

    out.residual = (lhs - shift_term - rhs).norm();
    return out;
}

double sylvester_residual_output(const OutputMap& map, const Vector& z) {
    const DelayLine psi = apply_observability_map(map, z);
    const DelayLine psiA = apply_observability_map(map, Vector(map.A * z));
    const Grid& g = map.grid;
    const double dx = g.spacing;
    double acc = 0.0;
    for (int i = 1; i < g.steps; ++i) {
        const Vector dpsi = (psi.sample(i + 1) - psi.sample(i - 1)) / (2.0 * dx);
        acc += (-dpsi - psiA.sample(i)).squaredNorm();
    }
    return std::sqrt(acc * dx);
}

double smoothing_identity_check(const InputMap& map, const Vector& u) {
    Eigen::FullPivLU<Matrix> lu(map.A);
    if (!lu.isInvertible()) {
        throw std::domain_error("smoothing_identity_check: A must be invertible");
    }
    std::vector<Vector> ones(map.grid.nodes(), u);
    const DelayLine const_profile(map.grid, std::move(ones));
    const Vector s = apply_controllability_map(map, const_profile);
    const Vector lhs = map.B * u - map.A * s;
    const Vector rhs = mat_exp(map.A, -map.tau) * map.B * u;
    return (lhs - rhs).norm();
}

SampledKernel composed_observer_kernel(const Matrix& A, const Matrix& C, const Matrix& F,
                                       double mu, const Grid& grid) {
    if (C.cols() != A.rows() || A.cols() != F.rows()) {
        throw std::invalid_argument("composed_observer_kernel: incompatible shapes");
    }
    if (std::abs(grid.length() - mu) > 1e-12 * std::max(1.0, mu)) {
        throw std::invalid_argument("composed_observer_kernel: grid does not span [0, mu]");
    }
    // -C e^{A(mu - x)} F via a reflected right-kernel sweep of e^{A(mu-x)} F
    SampledKernel k = sample_exp_kernel(A, F, grid, KernelDirection::Reflected);
    for (auto& s : k.samples) s = -C * s;
    return k;
}

std::pair<Vector, DelayLine> s_transform(const Vector& z, const DelayLine& phi,
                                         const InputMap& map, bool inverse) {
    const Vector s = apply_controllability_map(map, phi);
    return {inverse ? Vector(z - s) : Vector(z + s), phi};
}

std::pair<Vector, DelayLine> p_transform(const Vector& z, const DelayLine& psi,
                                         const OutputMap& map, bool inverse) {
    if (psi.grid() != map.grid) {
        throw std::invalid_argument("p_transform: grid mismatch");
    }
    const DelayLine pz = apply_observability_map(map, z);
    std::vector<Vector> samples(map.grid.nodes());
    for (int i = 0; i <= map.grid.steps; ++i) {
        samples[i] = inverse ? Vector(psi.sample(i) - pz.sample(i))
                             : Vector(psi.sample(i) + pz.sample(i));
    }
    return {z, DelayLine(map.grid, std::move(samples))};
}

} // namespace delaycomp
