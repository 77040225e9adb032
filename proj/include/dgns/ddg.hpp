#pragma once

#include "dgns/core.hpp"
#include "dgns/gas.hpp"

namespace dgns {

/// DDG numerical-flux coefficient pair. beta1 is defined for k >= 2; the
/// second-derivative jump of piecewise-linear polynomials vanishes
/// identically, so beta1 = 0 for k = 1.
struct FluxCoefficients {
    double beta0 = 0;
    double beta1 = 0;

    static FluxCoefficients for_degree(int k) {
        FluxCoefficients c;
        c.beta0 = double(k + 1) * double(k + 1);
        c.beta1 = (k >= 2) ? 1.0 / (2.0 * k * (k + 1.0)) : 0.0;
        return c;
    }
};

/// One side's trace data for `NV` scalar components at an edge point.
template <int NV>
struct TraceData {
    double Q[NV];
    double dQ[NV][2];
    double HQ[NV][3];  // xx, xy, yy
};

using NsTrace = TraceData<4>;
using ScalarTrace = TraceData<1>;

/// DDG gradient numerical flux for one scalar component. `jump` is the
/// exterior-minus-interior value jump, `avg_grad` the gradient average and
/// `jump_hess` the jump of (xx, xy, yy) second derivatives.
inline Vec2 ddg_gradient_flux(double jump, const Vec2& avg_grad, const double jump_hess[3],
                              const Vec2& n, double h_e, const FluxCoefficients& c) {
    const double pen = c.beta0 / h_e * jump;
    const double b1h = c.beta1 * h_e;
    return {pen * n.x + avg_grad.x + b1h * (jump_hess[0] * n.x + jump_hess[1] * n.y),
            pen * n.y + avg_grad.y + b1h * (jump_hess[1] * n.x + jump_hess[2] * n.y)};
}

/// Local Lax-Friedrichs convective flux, F_c^hat . n.
void lax_friedrichs_flux(const Primitives& sl, const Primitives& sr, const double Ql[4],
                         const double Qr[4], const Vec2& n, double out[4]);

/// Gradient fluxes of all four conserved variables at an edge point.
void ns_gradient_fluxes(const NsTrace& inner, const NsTrace& outer, const Vec2& n, double h_e,
                        const FluxCoefficients& c, Vec2 grad_hat[4]);

/// Viscous numerical flux F_v^hat . n via the direction-vector decomposition
/// evaluated at the edge-average state, plus the interface-correction
/// vectors corr[l] = 1/2 sum_m [[Q^m]] xi^(lm) (side-invariant product; each
/// cell contracts it with its own test-function gradient).
void ns_viscous_face_flux(const NsTrace& inner, const NsTrace& outer, const Primitives& avg,
                          const Vec2& n, double h_e, const FluxCoefficients& c, const GasModel& gas,
                          double Fv_hat[4], Vec2 corr[4]);

/// Same contraction structure with a single constant diffusion matrix
/// applied variable-by-variable (diagnostic mode: degenerates the system
/// to four decoupled scalar diffusion operators).
void constant_diffusion_face_flux(const NsTrace& inner, const NsTrace& outer, const Mat2& A,
                                  const Vec2& n, double h_e, const FluxCoefficients& c,
                                  double Fv_hat[4], Vec2 corr[4]);

}  // namespace dgns
