#include "delaycomp/fd_wave.hpp"

#include <cmath>
#include <stdexcept>

namespace delaycomp {

FdWaveSolver::FdWaveSolver(int cells, double courant,
                           const std::function<double(double)>& z0,
                           const std::function<double(double)>& v0)
    : cells_(cells), h_(1.0 / cells), dt_(courant / cells) {
    if (cells < 2) throw std::invalid_argument("FdWaveSolver: need at least 2 cells");
    if (!(courant > 0.0) || courant > 1.0) {
        throw std::invalid_argument("FdWaveSolver: courant must be in (0, 1]");
    }
    z_cur_.resize(cells + 1);
    z_prev_.resize(cells + 1);
    z_next_.resize(cells + 1);
    std::vector<double> v(cells + 1);
    for (int j = 0; j <= cells; ++j) {
        z_cur_[j] = z0(j * h_);
        v[j] = v0(j * h_);
    }
    z_cur_[0] = 0.0;
    // Taylor start: z^{-1} = z^0 - dt v0 + (dt^2/2) z0''; u(0) is taken as
    // the compatible slope z0'(1) so the ghost value introduces no O(1) kick.
    const double lam2 = (dt_ / h_) * (dt_ / h_);
    const double u0 = (z_cur_[cells] - z_cur_[cells - 1]) / h_;
    for (int j = 1; j <= cells; ++j) {
        const double zr = (j == cells) ? z_cur_[cells - 1] + 2.0 * h_ * u0 : z_cur_[j + 1];
        const double lap = zr - 2.0 * z_cur_[j] + z_cur_[j - 1];
        z_prev_[j] = z_cur_[j] - dt_ * v[j] + 0.5 * lam2 * lap;
    }
    z_prev_[0] = 0.0;
}

void FdWaveSolver::step(double u_now) {
    const double lam2 = (dt_ / h_) * (dt_ / h_);
    z_next_[0] = 0.0;
    for (int j = 1; j <= cells_; ++j) {
        const double zr =
            (j == cells_) ? z_cur_[cells_ - 1] + 2.0 * h_ * u_now : z_cur_[j + 1];
        z_next_[j] = 2.0 * z_cur_[j] - z_prev_[j] +
                     lam2 * (zr - 2.0 * z_cur_[j] + z_cur_[j - 1]);
    }
    std::swap(z_prev_, z_cur_);
    std::swap(z_cur_, z_next_);
    u_prev_ = u_now;
    t_ += dt_;
}

void FdWaveSolver::advance_to(double t_end, const std::function<double(double)>& u) {
    const int n = static_cast<int>(std::llround((t_end - t_) / dt_));
    for (int i = 0; i < n; ++i) step(u(t_));
}

std::vector<double> FdWaveSolver::velocity() const {
    // centered difference using a tentative next level at the last input
    const double lam2 = (dt_ / h_) * (dt_ / h_);
    std::vector<double> v(cells_ + 1);
    v[0] = 0.0;
    for (int j = 1; j <= cells_; ++j) {
        const double zr =
            (j == cells_) ? z_cur_[cells_ - 1] + 2.0 * h_ * u_prev_ : z_cur_[j + 1];
        const double znext = 2.0 * z_cur_[j] - z_prev_[j] +
                             lam2 * (zr - 2.0 * z_cur_[j] + z_cur_[j - 1]);
        v[j] = (znext - z_prev_[j]) / (2.0 * dt_);
    }
    return v;
}

double FdWaveSolver::project_displacement(double omega) const {
    double acc = 0.0;
    for (int j = 0; j <= cells_; ++j) {
        const double w = (j == 0 || j == cells_) ? 0.5 : 1.0;
        acc += w * z_cur_[j] * std::sin(omega * j * h_);
    }
    return 2.0 * acc * h_;
}

double FdWaveSolver::project_velocity(double omega) const {
    const std::vector<double> v = velocity();
    double acc = 0.0;
    for (int j = 0; j <= cells_; ++j) {
        const double w = (j == 0 || j == cells_) ? 0.5 : 1.0;
        acc += w * v[j] * std::sin(omega * j * h_);
    }
    return 2.0 * acc * h_;
}

} // namespace delaycomp
