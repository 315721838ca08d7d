#pragma once

#include <string>
#include <vector>

namespace delaycomp {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ResidualRow {
    std::string check_name;
    int grid_steps = 0;
    double residual = 0.0;
};

/// Sylvester residual / gain-identity convergence table on the scalar and
/// rotation benchmark plants (M in {250, 500, 1000}, plus the M = 2000
/// smoothing rows).
std::vector<ResidualRow> sylvester_convergence_table();

/// Exponential-decay ratio rho = max_t E(t+4)/E(t) of the wave closed loop
/// (k1 = 0.5, tau = 0.4, z0 = s^2, v0 = 0) over t in [0, 40].
double wave_closed_loop_decay_ratio(int modes, int line_steps);

/// Runs every verification criterion; each returns pass/fail plus a one-line
/// numeric summary.
std::vector<CriterionResult> run_acceptance_criteria();

} // namespace delaycomp
