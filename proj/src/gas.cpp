#include "dgns/gas.hpp"

#include <cmath>
#include <sstream>

namespace dgns {

bool admissible(const double Q[4]) {
    if (!(Q[0] > kAdmissibleFloor)) return false;
    const double e = Q[3] / Q[0] - 0.5 * (Q[1] * Q[1] + Q[2] * Q[2]) / (Q[0] * Q[0]);
    return e > kAdmissibleFloor;
}

Primitives primitives(const double Q[4], const GasModel& gas) {
    Primitives s;
    s.rho = Q[0];
    if (!(s.rho > kAdmissibleFloor)) {
        std::ostringstream os;
        os << "invalid state: rho = " << s.rho;
        throw InvalidStateError(os.str());
    }
    s.u = Q[1] / s.rho;
    s.v = Q[2] / s.rho;
    s.E = Q[3];
    s.e = s.E / s.rho - 0.5 * (s.u * s.u + s.v * s.v);
    if (!(s.e > kAdmissibleFloor)) {
        std::ostringstream os;
        os << "invalid state: internal energy e = " << s.e << " (rho = " << s.rho << ")";
        throw InvalidStateError(os.str());
    }
    s.p = (gas.gamma - 1.0) * s.rho * s.e;
    s.T = s.e / gas.cv;
    s.a = std::sqrt(gas.gamma * s.p / s.rho);
    s.mu = gas.viscosity(s.T);
    return s;
}

void conserved_from_primitives(double rho, double u, double v, double p, const GasModel& gas,
                               double Q[4]) {
    Q[0] = rho;
    Q[1] = rho * u;
    Q[2] = rho * v;
    Q[3] = p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v);
}

void convective_flux(const Primitives& s, double fc[4], double gc[4]) {
    const double ru = s.rho * s.u, rv = s.rho * s.v;
    fc[0] = ru;
    fc[1] = ru * s.u + s.p;
    fc[2] = ru * s.v;
    fc[3] = s.u * (s.E + s.p);
    gc[0] = rv;
    gc[1] = rv * s.u;
    gc[2] = rv * s.v + s.p;
    gc[3] = s.v * (s.E + s.p);
}

void primitive_gradients(const Primitives& s, const double gQ[4][2], Vec2& du, Vec2& dv, Vec2& de) {
    const double ir = 1.0 / s.rho;
    du = {(gQ[1][0] - s.u * gQ[0][0]) * ir, (gQ[1][1] - s.u * gQ[0][1]) * ir};
    dv = {(gQ[2][0] - s.v * gQ[0][0]) * ir, (gQ[2][1] - s.v * gQ[0][1]) * ir};
    const double Er = s.E * ir;
    de = {(gQ[3][0] - Er * gQ[0][0]) * ir - s.u * du.x - s.v * dv.x,
          (gQ[3][1] - Er * gQ[0][1]) * ir - s.u * du.y - s.v * dv.y};
}

void viscous_flux(const Primitives& s, const double gQ[4][2], const GasModel& gas, double fv[4],
                  double gv[4]) {
    Vec2 du, dv, de;
    primitive_gradients(s, gQ, du, dv, de);
    const double mu = s.mu;
    const double t11 = mu * (4.0 / 3.0 * du.x - 2.0 / 3.0 * dv.y);
    const double t12 = mu * (du.y + dv.x);
    const double t22 = mu * (-2.0 / 3.0 * du.x + 4.0 / 3.0 * dv.y);
    const double kq = mu * gas.gamma / gas.prandtl;
    fv[0] = 0.0;
    fv[1] = t11;
    fv[2] = t12;
    fv[3] = s.u * t11 + s.v * t12 + kq * de.x;
    gv[0] = 0.0;
    gv[1] = t12;
    gv[2] = t22;
    gv[3] = s.u * t12 + s.v * t22 + kq * de.y;
}

Mat2 diffusion_matrix(int l, int m, const Primitives& s, const GasModel& gas) {
    if (l < 1 || l > 4 || m < 1 || m > 4)
        throw SolverError("diffusion_matrix: index out of range");
    const double mr = s.mu / s.rho;
    const double u = s.u, v = s.v;
    const double gp = gas.gamma / gas.prandtl;
    switch (l * 10 + m) {
        case 21: return Mat2{{-mr * 4.0 / 3.0 * u, mr * 2.0 / 3.0 * v, -mr * v, -mr * u}};
        case 22: return Mat2{{mr * 4.0 / 3.0, 0, 0, mr}};
        case 23: return Mat2{{0, -mr * 2.0 / 3.0, mr, 0}};
        case 31: return Mat2{{-mr * v, -mr * u, mr * 2.0 / 3.0 * u, -mr * 4.0 / 3.0 * v}};
        case 32: return Mat2{{0, mr, -mr * 2.0 / 3.0, 0}};
        case 33: return Mat2{{mr, 0, 0, mr * 4.0 / 3.0}};
        case 41:
            return Mat2{{mr * ((0.5 * gp - 4.0 / 3.0) * u * u + (0.5 * gp - 1.0) * v * v - gp * s.e),
                         -mr * u * v / 3.0, -mr * u * v / 3.0,
                         mr * ((0.5 * gp - 1.0) * u * u + (0.5 * gp - 4.0 / 3.0) * v * v - gp * s.e)}};
        case 42: return Mat2{{mr * (4.0 / 3.0 - gp) * u, mr * v, -mr * 2.0 / 3.0 * v, mr * (1.0 - gp) * u}};
        case 43: return Mat2{{mr * (1.0 - gp) * v, -mr * 2.0 / 3.0 * u, mr * u, mr * (4.0 / 3.0 - gp) * v}};
        case 44: return Mat2{{mr * gp, 0, 0, mr * gp}};
        default: return Mat2{};  // continuity row and the vanishing (2,4), (3,4) blocks
    }
}

Vec2 direction_vector(int l, int m, const Primitives& s, const Vec2& n, const GasModel& gas) {
    return diffusion_matrix(l, m, s, gas).apply_transpose(n);
}

void direction_vectors(const Primitives& s, const Vec2& n, const GasModel& gas, Vec2 xi[4][4]) {
    const double mr = s.mu / s.rho;
    const double u = s.u, v = s.v;
    const double gp = gas.gamma / gas.prandtl;
    const double n1 = n.x, n2 = n.y;
    for (int m = 0; m < 4; ++m) xi[0][m] = {0, 0};
    // xi^(lm) = A^(lm)^T n, written out to share the common factors.
    xi[1][0] = {-mr * (4.0 / 3.0 * u * n1 + v * n2), -mr * (-2.0 / 3.0 * v * n1 + u * n2)};
    xi[1][1] = {mr * 4.0 / 3.0 * n1, mr * n2};
    xi[1][2] = {mr * n2, -mr * 2.0 / 3.0 * n1};
    xi[1][3] = {0, 0};
    xi[2][0] = {-mr * (v * n1 - 2.0 / 3.0 * u * n2), -mr * (u * n1 + 4.0 / 3.0 * v * n2)};
    xi[2][1] = {-mr * 2.0 / 3.0 * n2, mr * n1};
    xi[2][2] = {mr * n1, mr * 4.0 / 3.0 * n2};
    xi[2][3] = {0, 0};
    const double d1 = mr * ((0.5 * gp - 4.0 / 3.0) * u * u + (0.5 * gp - 1.0) * v * v - gp * s.e);
    const double d2 = mr * ((0.5 * gp - 1.0) * u * u + (0.5 * gp - 4.0 / 3.0) * v * v - gp * s.e);
    const double od = -mr * u * v / 3.0;
    xi[3][0] = {d1 * n1 + od * n2, od * n1 + d2 * n2};
    xi[3][1] = {mr * ((4.0 / 3.0 - gp) * u * n1 - 2.0 / 3.0 * v * n2), mr * (v * n1 + (1.0 - gp) * u * n2)};
    xi[3][2] = {mr * ((1.0 - gp) * v * n1 + u * n2), mr * (-2.0 / 3.0 * u * n1 + (4.0 / 3.0 - gp) * v * n2)};
    xi[3][3] = {mr * gp * n1, mr * gp * n2};
}

Mat2 antiderivative_matrix(int l, const Primitives& s, const GasModel& gas) {
    (void)gas;
    const double mu = s.mu, u = s.u, v = s.v;
    if (l == 2) return Mat2{{mu * 4.0 / 3.0 * u, -mu * 2.0 / 3.0 * v, mu * v, mu * u}};
    if (l == 3) return Mat2{{mu * v, mu * u, -mu * 2.0 / 3.0 * u, mu * 4.0 / 3.0 * v}};
    if (l == 4)
        throw SolverError("antiderivative matrix does not exist for the energy equation");
    throw SolverError("antiderivative_matrix: l must be 2 or 3");
}

}  // namespace dgns
