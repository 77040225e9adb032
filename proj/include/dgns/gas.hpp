#pragma once

#include "dgns/core.hpp"

namespace dgns {

struct GasModel {
    double gamma = 1.4;
    double prandtl = 0.72;
    double cv = 2.5;  // so T = e/cv; default gives T = (gamma-1)*e for gamma = 1.4

    enum class ViscosityLaw { constant, sutherland } law = ViscosityLaw::constant;
    double mu_constant = 0.0;
    double mu_ref = 0.0, T_ref = 1.0, C_s = 0.0;  // Sutherland parameters

    double viscosity(double T) const {
        if (law == ViscosityLaw::constant) return mu_constant;
        const double r = T / T_ref;
        return mu_ref * r * std::sqrt(r) * (T_ref + C_s) / (T + C_s);
    }
    double viscosity_dT(double T) const {
        if (law == ViscosityLaw::constant) return 0.0;
        const double r = T / T_ref;
        const double f = r * std::sqrt(r);
        return mu_ref * (T_ref + C_s) * (1.5 * f / T * (T + C_s) - f) / ((T + C_s) * (T + C_s));
    }
};

/// Pointwise primitive state derived from the conserved vector.
struct Primitives {
    double rho, u, v, E;
    double e;   // specific internal energy
    double p;
    double T;
    double a;   // speed of sound
    double mu;
};

/// Throws InvalidStateError if rho or e is at or below the admissible floor.
Primitives primitives(const double Q[4], const GasModel& gas);

/// True when the state is admissible; no exception path.
bool admissible(const double Q[4]);

void conserved_from_primitives(double rho, double u, double v, double p, const GasModel& gas,
                               double Q[4]);

/// Euler fluxes f_c, g_c.
void convective_flux(const Primitives& s, double fc[4], double gc[4]);

/// Navier-Stokes viscous fluxes from conserved gradients gQ[var][dim].
/// Primitive gradients are recovered by the constant-Jacobian chain rule.
void viscous_flux(const Primitives& s, const double gQ[4][2], const GasModel& gas, double fv[4],
                  double gv[4]);

/// Gradients of (u, v, e) recovered from conserved gradients.
void primitive_gradients(const Primitives& s, const double gQ[4][2], Vec2& du, Vec2& dv, Vec2& de);

/// Diffusion matrix A^(lm) of the viscous-flux decomposition; 1-based
/// equation index l and variable index m.
Mat2 diffusion_matrix(int l, int m, const Primitives& s, const GasModel& gas);

/// Direction vector xi^(lm) = A^(lm)(Q)^T n.
Vec2 direction_vector(int l, int m, const Primitives& s, const Vec2& n, const GasModel& gas);

/// All twelve direction vectors at once; xi[l-1][m-1]. Row l=1 is zero.
void direction_vectors(const Primitives& s, const Vec2& n, const GasModel& gas, Vec2 xi[4][4]);

/// Antiderivative matrix B^(l) for l in {2,3}; its Jacobian with respect to
/// the conserved variables reproduces A^(lm) when mu is constant. No such
/// matrix exists for the energy equation (l=4): that request throws.
Mat2 antiderivative_matrix(int l, const Primitives& s, const GasModel& gas);

}  // namespace dgns
