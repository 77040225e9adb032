#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dgns/field.hpp"

namespace dgns {

/// Residual operator signature shared by the NS and scalar assemblers.
using ResidualOp = std::function<void(const SolutionField&, double t, SolutionField& rates)>;

struct TimeConfig {
    double cfl = 0.1;         // lambda of the CFL condition
    double dt_safety = 0.9;   // strict-inequality margin
    double t_final = 0.0;     // final-time mode horizon
    double steady_tol = -1.0; // steady mode when positive
    long max_steps = 100000000;
    long log_every = 0;       // 0: silent
    std::function<void(long, double, double, const std::vector<double>&)> log_sink;
};

struct StepRecord {
    long step;
    double t, dt;
    std::vector<double> res;  // per-variable residual 2-norms at step start
};

struct RunResult {
    double t = 0;
    long steps = 0;
    bool steady_reached = false;
    std::vector<StepRecord> history;
};

/// dt = safety * omega * lambda / cfl_denominator.
double cfl_time_step(double cfl_denominator, double omega, double lambda, double safety);

/// One SSP-RK3 step: u1 = u + dt L(u); u2 = 3/4 u + 1/4 (u1 + dt L(u1));
/// u <- 1/3 u + 2/3 (u2 + dt L(u2)). Stage states are checked for
/// admissible cell averages; failures report the stage index.
/// Returns the per-variable coefficient norms of the first-stage rates.
std::vector<double> ssp_rk3_step(SolutionField& U, double t, double dt, const ResidualOp& L,
                                 SolutionField& k, SolutionField& u1, SolutionField& u2,
                                 bool check_admissible = true);

enum class RunMode { final_time, steady };

/// Advances U with the CFL-selected time step. `dt_denominator(U)` supplies
/// the operator-specific wave/diffusion ratio, recomputed every step.
RunResult advance(SolutionField& U, const ResidualOp& L,
                  const std::function<double(const SolutionField&)>& dt_denominator, double omega,
                  const TimeConfig& cfg, RunMode mode,
                  const std::function<void(long, double, const SolutionField&)>& per_step = nullptr);

}  // namespace dgns
