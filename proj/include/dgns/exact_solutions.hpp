#pragma once

#include <functional>

#include "dgns/boundary.hpp"
#include "dgns/gas.hpp"

namespace dgns {

/// Pointwise primitive fields (rho, u, v, e) with analytic first derivatives
/// in (x, y, t) and second spatial derivatives; everything the Navier-Stokes
/// operator needs to evaluate a manufactured source in closed form.
struct ExactEval {
    double val[4];     // rho, u, v, e
    double d1[4][3];   // d/dx, d/dy, d/dt
    double d2[4][3];   // xx, xy, yy
};

struct ExactSolution {
    std::function<ExactEval(double x, double y, double t)> eval;

    void conserved(double x, double y, double t, const GasModel& gas, double Q[4]) const;
};

/// Traveling-wave manufactured solution: all fields share one phase.
ExactSolution manufactured_solution_1();
/// Wave-packet manufactured solution: products of waves with different
/// directions and speeds.
ExactSolution manufactured_solution_2();
ExactSolution uniform_flow(const FreestreamState& fs, const GasModel& gas);

/// Manufactured source S = dQ/dt + div F_c - div F_v evaluated analytically
/// from the exact fields via the product rule.
void mms_source(const ExactSolution& sol, double x, double y, double t, const GasModel& gas,
                double S[4]);

}  // namespace dgns
