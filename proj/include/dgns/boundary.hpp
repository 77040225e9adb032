#pragma once

#include "dgns/ddg.hpp"
#include "dgns/mesh.hpp"

namespace dgns {

struct FreestreamState {
    double rho = 1.0, u = 0.0, v = 0.0, p = 1.0;

    void conserved(const GasModel& gas, double Q[4]) const;
};

struct BoundaryCondition {
    BcKind kind = BcKind::inflow_farfield;
    FreestreamState freestream;
    double p_back = 1.0;  // outflow back pressure (defaults to p_inf in case setup)
};

/// Ghost trace (Q+, dQ+, H+) for the weakly enforced boundary conditions.
/// Periodic edges never reach this function; they are handled by pairing.
NsTrace ghost_state(const BoundaryCondition& bc, const NsTrace& interior, const Vec2& n,
                    const GasModel& gas);

}  // namespace dgns
