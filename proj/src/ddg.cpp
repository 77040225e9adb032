#include "dgns/ddg.hpp"

#include <algorithm>
#include <cmath>

namespace dgns {

void lax_friedrichs_flux(const Primitives& sl, const Primitives& sr, const double Ql[4],
                         const double Qr[4], const Vec2& n, double out[4]) {
    double fl[4], gl[4], fr[4], gr[4];
    convective_flux(sl, fl, gl);
    convective_flux(sr, fr, gr);
    const double al = std::hypot(sl.u, sl.v) + sl.a;
    const double ar = std::hypot(sr.u, sr.v) + sr.a;
    const double alpha = std::max(al, ar);
    for (int m = 0; m < 4; ++m) {
        out[m] = 0.5 * ((fl[m] + fr[m]) * n.x + (gl[m] + gr[m]) * n.y) - alpha * (Qr[m] - Ql[m]);
    }
}

void ns_gradient_fluxes(const NsTrace& inner, const NsTrace& outer, const Vec2& n, double h_e,
                        const FluxCoefficients& c, Vec2 grad_hat[4]) {
    for (int m = 0; m < 4; ++m) {
        const double jump = outer.Q[m] - inner.Q[m];
        const Vec2 avg{0.5 * (inner.dQ[m][0] + outer.dQ[m][0]),
                       0.5 * (inner.dQ[m][1] + outer.dQ[m][1])};
        const double jh[3] = {outer.HQ[m][0] - inner.HQ[m][0], outer.HQ[m][1] - inner.HQ[m][1],
                              outer.HQ[m][2] - inner.HQ[m][2]};
        grad_hat[m] = ddg_gradient_flux(jump, avg, jh, n, h_e, c);
    }
}

void ns_viscous_face_flux(const NsTrace& inner, const NsTrace& outer, const Primitives& avg,
                          const Vec2& n, double h_e, const FluxCoefficients& c, const GasModel& gas,
                          double Fv_hat[4], Vec2 corr[4]) {
    Vec2 grad_hat[4];
    ns_gradient_fluxes(inner, outer, n, h_e, c, grad_hat);
    Vec2 xi[4][4];
    direction_vectors(avg, n, gas, xi);
    Fv_hat[0] = 0.0;
    corr[0] = {0, 0};
    for (int l = 1; l < 4; ++l) {
        double flux = 0;
        Vec2 cr{0, 0};
        for (int m = 0; m < 4; ++m) {
            flux += grad_hat[m].dot(xi[l][m]);
            const double jump = outer.Q[m] - inner.Q[m];
            cr += 0.5 * jump * xi[l][m];
        }
        Fv_hat[l] = flux;
        corr[l] = cr;
    }
}

void constant_diffusion_face_flux(const NsTrace& inner, const NsTrace& outer, const Mat2& A,
                                  const Vec2& n, double h_e, const FluxCoefficients& c,
                                  double Fv_hat[4], Vec2 corr[4]) {
    Vec2 grad_hat[4];
    ns_gradient_fluxes(inner, outer, n, h_e, c, grad_hat);
    const Vec2 xi = A.apply_transpose(n);
    for (int m = 0; m < 4; ++m) {
        Fv_hat[m] = grad_hat[m].dot(xi);
        corr[m] = 0.5 * (outer.Q[m] - inner.Q[m]) * xi;
    }
}

}  // namespace dgns
