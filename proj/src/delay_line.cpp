#include "delaycomp/delay_line.hpp"

#include <cmath>
#include <stdexcept>

namespace delaycomp {

DelayLine::DelayLine(Grid grid, int value_dim)
    : grid_(grid), value_dim_(value_dim), buf_(grid.nodes(), Vector::Zero(value_dim)) {
    if (value_dim < 1) {
        throw std::invalid_argument("DelayLine: value_dim must be >= 1");
    }
}

DelayLine::DelayLine(Grid grid, std::vector<Vector> samples)
    : grid_(grid), value_dim_(0), buf_(std::move(samples)) {
    if (static_cast<int>(buf_.size()) != grid_.nodes()) {
        throw std::invalid_argument("DelayLine: samples.size() != steps+1");
    }
    value_dim_ = static_cast<int>(buf_.front().size());
    for (const auto& s : buf_) {
        if (s.size() != value_dim_) {
            throw std::invalid_argument("DelayLine: inconsistent sample dims");
        }
    }
}

DelayLine DelayLine::resolvent_profile(double lambda, const Vector& u, const Grid& grid) {
    std::vector<Vector> samples(grid.nodes());
    for (int i = 0; i <= grid.steps; ++i) {
        samples[i] = std::exp(-lambda * grid.node(i)) * u;
    }
    return DelayLine(grid, std::move(samples));
}

void DelayLine::shift_in(const Vector& u) {
    if (u.size() != value_dim_) {
        throw std::invalid_argument("DelayLine::shift_in: dim mismatch");
    }
    const int cap = static_cast<int>(buf_.size());
    head_ = (head_ + cap - 1) % cap;
    buf_[head_] = u;
}

void DelayLine::add_distributed_source(const SampledKernel& kernel, const Vector& scalar) {
    if (kernel.grid != grid_) {
        throw std::invalid_argument("DelayLine::add_distributed_source: grid mismatch");
    }
    const double dt = grid_.spacing; // dt = dx by the CFL=1 convention
    for (int i = 0; i <= grid_.steps; ++i) {
        buf_[phys(i)].noalias() += dt * (kernel.samples[i] * scalar);
    }
}

std::vector<Vector> DelayLine::snapshot() const {
    std::vector<Vector> out;
    out.reserve(buf_.size());
    for (int i = 0; i <= grid_.steps; ++i) out.push_back(sample(i));
    return out;
}

double DelayLine::l2_norm() const {
    double acc = 0.0;
    for (int i = 0; i <= grid_.steps; ++i) {
        const double w = (i == 0 || i == grid_.steps) ? 0.5 : 1.0;
        acc += w * sample(i).squaredNorm();
    }
    return std::sqrt(acc * grid_.spacing);
}

} // namespace delaycomp
