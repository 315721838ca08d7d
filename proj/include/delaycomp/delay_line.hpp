#pragma once

#include "delaycomp/numkit.hpp"

namespace delaycomp {

/// Discrete transport delay line on [0, alpha]: a profile phi sampled at the
/// M+1 grid nodes, advanced by an exact right shift (unit speed, dt = dx).
/// samples(0) is the head (injection point), samples(M) the tail (readout).
class DelayLine {
public:
    DelayLine(Grid grid, int value_dim);
    DelayLine(Grid grid, std::vector<Vector> samples);

    /// Profile e^{-lambda x} u, the resolvent of the shift generator applied
    /// to a boundary impulse.
    static DelayLine resolvent_profile(double lambda, const Vector& u, const Grid& grid);

    const Grid& grid() const { return grid_; }
    int value_dim() const { return value_dim_; }

    const Vector& sample(int i) const { return buf_[phys(i)]; }
    const Vector& head() const { return sample(0); }
    const Vector& tail() const { return sample(grid_.steps); }

    /// Exact transport by one cell: every node moves one slot toward the tail,
    /// the old tail value is dropped and u enters at the head. O(1) via index
    /// rotation.
    void shift_in(const Vector& u);

    void set_head(const Vector& u) { buf_[phys(0)] = u; }

    /// samples[i] += dt * kernel[i] * scalar, with dt = grid spacing
    /// (first-order source splitting applied after the exact shift).
    void add_distributed_source(const SampledKernel& kernel, const Vector& scalar);

    std::vector<Vector> snapshot() const;

    /// Discrete L2 norm, sqrt(trapezoid of |phi(x)|^2).
    double l2_norm() const;

private:
    int phys(int i) const { return (head_ + i) % static_cast<int>(buf_.size()); }

    Grid grid_;
    int value_dim_;
    int head_ = 0;
    std::vector<Vector> buf_;
};

} // namespace delaycomp
