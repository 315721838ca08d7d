#pragma once

#include <Eigen/Dense>
#include <vector>

namespace delaycomp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Uniform grid over [0, length] with M cells and M+1 nodes.
/// The length is always spacing * steps; it is never stored separately.
struct Grid {
    int steps = 1;        // M
    double spacing = 0.0; // dx

    Grid() = default;
    Grid(double length, int steps);

    double length() const { return spacing * steps; }
    int nodes() const { return steps + 1; }
    double node(int i) const { return spacing * i; }

    bool operator==(const Grid&) const = default;
};

/// Matrix-valued kernel sampled at the grid nodes, samples[i] = k(i*dx).
struct SampledKernel {
    Grid grid;
    std::vector<Matrix> samples; // steps+1 entries, identical shapes

    int rows() const { return static_cast<int>(samples.front().rows()); }
    int cols() const { return static_cast<int>(samples.front().cols()); }
};

enum class KernelDirection { Forward, Reflected };

/// e^{At} by scaling-and-squaring with Pade approximation.
Matrix mat_exp(const Matrix& A, double t);

/// Forward: samples[i] = e^{A i dx} V.  Reflected: samples[i] = e^{A (L - i dx)} V.
/// Built from a single step exponential and repeated products.
SampledKernel sample_exp_kernel(const Matrix& A, const Matrix& V, const Grid& grid,
                                KernelDirection direction = KernelDirection::Forward);

/// Left-sided variant: forward samples[i] = V e^{A i dx}, reflected V e^{A (L - i dx)}.
SampledKernel sample_exp_kernel_left(const Matrix& V, const Matrix& A, const Grid& grid,
                                     KernelDirection direction = KernelDirection::Forward);

/// Composite trapezoid rule of sum_i w_i * kernel[i] * profile[i] over the shared grid.
Vector trapezoid_integral(const SampledKernel& kernel, const std::vector<Vector>& profile);

/// Trapezoid rule for a scalar sequence on the grid.
double trapezoid_scalar(const Grid& grid, const std::vector<double>& values);

} // namespace delaycomp
