#include "dgns/time_integration.hpp"

#include <cmath>
#include <sstream>

#include "dgns/gas.hpp"

namespace dgns {

double cfl_time_step(double cfl_denominator, double omega, double lambda, double safety) {
    if (!(cfl_denominator > 0)) throw SolverError("CFL denominator must be positive");
    return safety * omega * lambda / cfl_denominator;
}

namespace {

void check_stage_averages(const SolutionField& U, int stage) {
    if (U.nvars() != 4) return;
    for (int c = 0; c < U.n_cells(); ++c) {
        double Q[4];
        for (int v = 0; v < 4; ++v) Q[v] = U.cell_average(c, v);
        if (!admissible(Q)) {
            std::ostringstream os;
            os << "inadmissible cell average after RK stage " << stage << " (cell " << c
               << ": rho=" << Q[0] << ")";
            throw InvalidStateError(os.str());
        }
    }
}

}  // namespace

std::vector<double> ssp_rk3_step(SolutionField& U, double t, double dt, const ResidualOp& L,
                                 SolutionField& k, SolutionField& u1, SolutionField& u2,
                                 bool check_admissible) {
    const size_t n = U.size();
    double* u = U.data();
    double* kd = k.data();
    double* d1 = u1.data();
    double* d2 = u2.data();

    // Increment form of the Shu-Osher convex combinations:
    //   u2   = 3/4 u + 1/4 (u1 + dt k2) = u + 1/4 ((u1 - u) + dt k2)
    //   u_new = 1/3 u + 2/3 (u2 + dt k3) = u + 2/3 ((u2 - u) + dt k3)
    // algebraically identical, and exactly the identity when L vanishes.
    L(U, t, k);
    std::vector<double> res = k.coefficient_norms();
    for (size_t i = 0; i < n; ++i) d1[i] = u[i] + dt * kd[i];
    if (check_admissible) check_stage_averages(u1, 1);

    L(u1, t + dt, k);
    for (size_t i = 0; i < n; ++i) d2[i] = u[i] + 0.25 * ((d1[i] - u[i]) + dt * kd[i]);
    if (check_admissible) check_stage_averages(u2, 2);

    L(u2, t + 0.5 * dt, k);
    for (size_t i = 0; i < n; ++i)
        u[i] = u[i] + (2.0 / 3.0) * ((d2[i] - u[i]) + dt * kd[i]);
    if (check_admissible) check_stage_averages(U, 3);
    return res;
}

RunResult advance(SolutionField& U, const ResidualOp& L,
                  const std::function<double(const SolutionField&)>& dt_denominator, double omega,
                  const TimeConfig& cfg, RunMode mode,
                  const std::function<void(long, double, const SolutionField&)>& per_step) {
    RunResult out;
    SolutionField k(U.basis(), U.nvars()), u1(U.basis(), U.nvars()), u2(U.basis(), U.nvars());
    double t = 0.0;
    const bool record_all = true;

    for (long step = 0; step < cfg.max_steps; ++step) {
        if (mode == RunMode::final_time && t >= cfg.t_final) break;
        double dt = cfl_time_step(dt_denominator(U), omega, cfg.cfl, cfg.dt_safety);
        if (mode == RunMode::final_time && t + dt >= cfg.t_final) dt = cfg.t_final - t;

        std::vector<double> res;
        try {
            res = ssp_rk3_step(U, t, dt, L, k, u1, u2);
        } catch (const SolverError& err) {
            std::ostringstream os;
            os << err.what() << " [time step " << step << ", t = " << t
               << "; solution left at the last completed step]";
            throw SolverError(os.str());
        }

        if (record_all) out.history.push_back({step, t, dt, res});
        if (cfg.log_sink && cfg.log_every > 0 && step % cfg.log_every == 0)
            cfg.log_sink(step, t, dt, res);
        t += dt;
        ++out.steps;
        if (per_step) per_step(step, t, U);

        if (mode == RunMode::steady) {
            bool done = true;
            for (double r : res)
                if (!(r < cfg.steady_tol)) done = false;
            if (done) {
                out.steady_reached = true;
                break;
            }
        }
        if (mode == RunMode::final_time && cfg.t_final <= 0) break;
    }
    out.t = t;
    return out;
}

}  // namespace dgns
