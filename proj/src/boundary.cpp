#include "dgns/boundary.hpp"

#include <cstring>

namespace dgns {

void FreestreamState::conserved(const GasModel& gas, double Q[4]) const {
    conserved_from_primitives(rho, u, v, p, gas, Q);
}

namespace {

NsTrace copy_derivatives(const NsTrace& in) {
    NsTrace g;
    std::memcpy(g.dQ, in.dQ, sizeof(g.dQ));
    std::memcpy(g.HQ, in.HQ, sizeof(g.HQ));
    return g;
}

}  // namespace

NsTrace ghost_state(const BoundaryCondition& bc, const NsTrace& interior, const Vec2& n,
                    const GasModel& gas) {
    const Primitives s = primitives(interior.Q, gas);
    const double gm1 = gas.gamma - 1.0;

    switch (bc.kind) {
        case BcKind::inflow_farfield: {
            NsTrace g = copy_derivatives(interior);
            bc.freestream.conserved(gas, g.Q);
            return g;
        }
        case BcKind::outflow: {
            NsTrace g = copy_derivatives(interior);
            g.Q[0] = interior.Q[0];
            g.Q[1] = interior.Q[1];
            g.Q[2] = interior.Q[2];
            g.Q[3] = (2.0 * bc.p_back - s.p) / gm1 + 0.5 * s.rho * (s.u * s.u + s.v * s.v);
            return g;
        }
        case BcKind::adiabatic_wall: {
            NsTrace g = copy_derivatives(interior);
            // No-slip ghost with zero wall-normal pressure gradient (p+ = p-),
            // so the energy keeps the interior kinetic contribution.
            g.Q[0] = interior.Q[0];
            g.Q[1] = 0.0;
            g.Q[2] = 0.0;
            g.Q[3] = s.p / gm1 + 0.5 * s.rho * (s.u * s.u + s.v * s.v);
            // Zero heat flux: project the internal-energy gradient onto the
            // wall and rebuild the energy gradient from
            // E = rho e + 1/2 rho (u^2 + v^2).
            Vec2 du, dv, de;
            primitive_gradients(s, interior.dQ, du, dv, de);
            const double den = de.x * n.x + de.y * n.y;
            const Vec2 de_g{de.x - den * n.x, de.y - den * n.y};
            const double ke = s.u * s.u + s.v * s.v;
            for (int d = 0; d < 2; ++d) {
                const double drho = interior.dQ[0][d];
                const double dke =
                    drho * ke + 2.0 * s.rho * (s.u * (d ? du.y : du.x) + s.v * (d ? dv.y : dv.x));
                g.dQ[3][d] = drho * s.e + s.rho * (d ? de_g.y : de_g.x) + 0.5 * dke;
            }
            return g;
        }
        case BcKind::symmetry_plane: {
            NsTrace g;
            const double un = s.u * n.x + s.v * n.y;
            g.Q[0] = interior.Q[0];
            g.Q[1] = s.rho * (s.u - 2.0 * un * n.x);
            g.Q[2] = s.rho * (s.v - 2.0 * un * n.y);
            g.Q[3] = interior.Q[3];
            // Conserved-variable gradients reflected componentwise.
            for (int m = 0; m < 4; ++m) {
                const double dn = interior.dQ[m][0] * n.x + interior.dQ[m][1] * n.y;
                g.dQ[m][0] = interior.dQ[m][0] - 2.0 * dn * n.x;
                g.dQ[m][1] = interior.dQ[m][1] - 2.0 * dn * n.y;
            }
            std::memcpy(g.HQ, interior.HQ, sizeof(g.HQ));
            return g;
        }
        case BcKind::periodic:
            throw SolverError("periodic edges are resolved by pairing, not ghost states");
    }
    throw SolverError("unknown boundary kind");
}

}  // namespace dgns
