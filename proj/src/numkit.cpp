#include "delaycomp/numkit.hpp"

#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace delaycomp {

Grid::Grid(double length, int steps_) : steps(steps_) {
    if (steps < 1) {
        throw std::invalid_argument("Grid: steps must be >= 1");
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("Grid: length must be positive and finite");
    }
    spacing = length / steps;
}

Matrix mat_exp(const Matrix& A, double t) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument("mat_exp: matrix must be square");
    }
    if (!A.allFinite() || !std::isfinite(t)) {
        throw std::domain_error("mat_exp: non-finite input");
    }
    return (A * t).exp();
}

SampledKernel sample_exp_kernel(const Matrix& A, const Matrix& V, const Grid& grid,
                                KernelDirection direction) {
    if (A.rows() != A.cols() || A.cols() != V.rows()) {
        throw std::invalid_argument("sample_exp_kernel: incompatible shapes");
    }
    const Matrix step = mat_exp(A, grid.spacing);
    SampledKernel out;
    out.grid = grid;
    out.samples.reserve(grid.nodes());
    if (direction == KernelDirection::Forward) {
        Matrix cur = V;
        for (int i = 0; i <= grid.steps; ++i) {
            out.samples.push_back(cur);
            if (i < grid.steps) cur = step * cur;
        }
    } else {
        // fill tail-first so only one exponential is ever formed
        std::vector<Matrix> rev(grid.nodes());
        Matrix cur = V;
        for (int i = grid.steps; i >= 0; --i) {
            rev[i] = cur;
            if (i > 0) cur = step * cur;
        }
        out.samples = std::move(rev);
    }
    return out;
}

SampledKernel sample_exp_kernel_left(const Matrix& V, const Matrix& A, const Grid& grid,
                                     KernelDirection direction) {
    if (A.rows() != A.cols() || V.cols() != A.rows()) {
        throw std::invalid_argument("sample_exp_kernel_left: incompatible shapes");
    }
    const Matrix step = mat_exp(A, grid.spacing);
    SampledKernel out;
    out.grid = grid;
    out.samples.reserve(grid.nodes());
    if (direction == KernelDirection::Forward) {
        Matrix cur = V;
        for (int i = 0; i <= grid.steps; ++i) {
            out.samples.push_back(cur);
            if (i < grid.steps) cur = cur * step;
        }
    } else {
        std::vector<Matrix> rev(grid.nodes());
        Matrix cur = V;
        for (int i = grid.steps; i >= 0; --i) {
            rev[i] = cur;
            if (i > 0) cur = cur * step;
        }
        out.samples = std::move(rev);
    }
    return out;
}

Vector trapezoid_integral(const SampledKernel& kernel, const std::vector<Vector>& profile) {
    if (static_cast<int>(profile.size()) != kernel.grid.nodes()) {
        throw std::invalid_argument("trapezoid_integral: grid mismatch");
    }
    Vector acc = Vector::Zero(kernel.rows());
    const int M = kernel.grid.steps;
    for (int i = 0; i <= M; ++i) {
        const double w = (i == 0 || i == M) ? 0.5 : 1.0;
        acc.noalias() += w * (kernel.samples[i] * profile[i]);
    }
    return acc * kernel.grid.spacing;
}

double trapezoid_scalar(const Grid& grid, const std::vector<double>& values) {
    if (static_cast<int>(values.size()) != grid.nodes()) {
        throw std::invalid_argument("trapezoid_scalar: grid mismatch");
    }
    double acc = 0.5 * (values.front() + values.back());
    for (int i = 1; i < grid.steps; ++i) acc += values[i];
    return acc * grid.spacing;
}

} // namespace delaycomp
