#pragma once

#include <functional>
#include <vector>

namespace delaycomp {

/// Second-order finite-difference solver for z_tt = z_ss on (0,1) with
/// z(0,t) = 0 and Neumann actuation z_s(1,t) = u(t). Independent reference
/// for the modal solver; leapfrog in time with a ghost node at s = 1.
class FdWaveSolver {
public:
    /// cells spatial intervals, courant = dt / h (must be <= 1).
    FdWaveSolver(int cells, double courant,
                 const std::function<double(double)>& z0,
                 const std::function<double(double)>& v0);

    void step(double u_now);
    void advance_to(double t_end, const std::function<double(double)>& u);

    double time() const { return t_; }
    double dt() const { return dt_; }
    double h() const { return h_; }
    int cells() const { return cells_; }

    /// Displacement at node j at the current time level.
    const std::vector<double>& displacement() const { return z_cur_; }
    /// Centered-difference velocity at the current time level (valid after
    /// at least one step).
    std::vector<double> velocity() const;

    /// Projection 2 int_0^1 z sin(w s) ds of the current displacement.
    double project_displacement(double omega) const;
    double project_velocity(double omega) const;

private:
    int cells_;
    double h_;
    double dt_;
    double t_ = 0.0;
    double u_prev_ = 0.0;
    std::vector<double> z_prev_, z_cur_, z_next_;
};

} // namespace delaycomp
