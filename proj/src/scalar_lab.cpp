#include "dgns/scalar_lab.hpp"

#include <cmath>
#include <cstring>

namespace dgns {

ScalarOperator::ScalarOperator(const BasisSet& basis, ScalarDiffusionProblem problem, Scheme scheme)
    : basis_(&basis),
      mesh_(&basis.mesh()),
      problem_(std::move(problem)),
      scheme_(scheme),
      coef_(FluxCoefficients::for_degree(basis.degree())) {
    if (!problem_.A) throw SolverError("scalar problem needs a diffusion matrix closure");
    if (scheme_ == Scheme::ddg_original && (!problem_.B || !problem_.dA))
        throw SolverError("original DDG scheme needs the antiderivative table b_ij and a_ij'");
    for (const auto& f : mesh_->faces)
        if (f.boundary()) throw SolverError("scalar lab supports periodic boundaries only");
    const size_t nfq = mesh_->faces.size() * basis_->edge_rule().size();
    face_flux_.resize(nfq);
    face_corr_.resize(nfq * 2);
}

void ScalarOperator::load_trace(const SolutionField& U, int cell, int le, bool rev, int q,
                                Trace& out) const {
    const int nb = basis_->count();
    const double* psi = basis_->trace_values(le, rev, q);
    const double* dpsi = basis_->trace_grads(le, rev, q);
    const double* hpsi = basis_->trace_hess(le, rev, q);
    const CellMap& m = basis_->cell_map(cell);
    const double* cv = U.cell(cell);
    const double a = m.inv_jac(0, 0), b = m.inv_jac(0, 1), c = m.inv_jac(1, 0), d = m.inv_jac(1, 1);
    double s = 0, gr = 0, gs = 0, hrr = 0, hrs = 0, hss = 0;
    for (int j = 0; j < nb; ++j) {
        const double cj = cv[j];
        s += cj * psi[j];
        gr += cj * dpsi[2 * j];
        gs += cj * dpsi[2 * j + 1];
        hrr += cj * hpsi[3 * j];
        hrs += cj * hpsi[3 * j + 1];
        hss += cj * hpsi[3 * j + 2];
    }
    out.u = s * m.scale;
    out.du = {(a * gr + c * gs) * m.scale, (b * gr + d * gs) * m.scale};
    out.H[0] = (a * (hrr * a + hrs * c) + c * (hrs * a + hss * c)) * m.scale;
    out.H[1] = (a * (hrr * b + hrs * d) + c * (hrs * b + hss * d)) * m.scale;
    out.H[2] = (b * (hrr * b + hrs * d) + d * (hrs * b + hss * d)) * m.scale;
}

void ScalarOperator::compute(const SolutionField& U, double /*t*/, SolutionField& rates) const {
    const int ne = basis_->edge_rule().size();
    const int nq = basis_->volume_rule().size();
    const int nb = basis_->count();
    const auto& ew = basis_->edge_rule().weights;
    const auto& vw = basis_->volume_rule().weights;

    // Face phase: single-valued edge flux and correction vector.
    Trace tl, tr;
    for (size_t fi = 0; fi < mesh_->faces.size(); ++fi) {
        const Face& f = mesh_->faces[fi];
        for (int q = 0; q < ne; ++q) {
            load_trace(U, f.left_cell, f.left_local, false, q, tl);
            load_trace(U, f.right_cell, f.right_local, f.right_reversed, q, tr);
            const double jump = tr.u - tl.u;
            const double uavg = 0.5 * (tl.u + tr.u);
            double flux = 0;
            Vec2 corr{0, 0};
            if (scheme_ == Scheme::ddgic_new) {
                const Vec2 avg = 0.5 * (tl.du + tr.du);
                const double jh[3] = {tr.H[0] - tl.H[0], tr.H[1] - tl.H[1], tr.H[2] - tl.H[2]};
                const Vec2 ghat = ddg_gradient_flux(jump, avg, jh, f.normal, f.h_e, coef_);
                const Vec2 xi = problem_.A(uavg).apply_transpose(f.normal);
                flux = ghat.dot(xi);
                corr = 0.5 * jump * xi;
            } else {
                // Original DDG flux on b_ij(u): for each component i,
                //   beta0/h_e [[b_ij]] n_j + {{a_ij u_xj}}
                //   + beta1 h_e [[ d_x1(a_ij u_xj) n_1 + d_x2(a_ij u_xj) n_2 ]],
                // contracted with n_i; the correction pairs [[b_ij]] n_i with
                // the test-function gradient component j.
                const Mat2 Bl = problem_.B(tl.u), Br = problem_.B(tr.u);
                const Mat2 Al = problem_.A(tl.u), Ar = problem_.A(tr.u);
                const Mat2 dAl = problem_.dA(tl.u), dAr = problem_.dA(tr.u);
                const double n1 = f.normal.x, n2 = f.normal.y;
                for (int i = 0; i < 2; ++i) {
                    double comp = 0;
                    for (int j = 0; j < 2; ++j) {
                        const double jb = Br(i, j) - Bl(i, j);
                        const double duL = j == 0 ? tl.du.x : tl.du.y;
                        const double duR = j == 0 ? tr.du.x : tr.du.y;
                        const double avg1 = 0.5 * (Al(i, j) * duL + Ar(i, j) * duR);
                        // d_xl (a_ij(u) u_xj) = a'_ij u_xl u_xj + a_ij u_{xl xj}
                        auto second = [&](const Trace& tt, const Mat2& A, const Mat2& dA, int l) {
                            const double uxl = l == 0 ? tt.du.x : tt.du.y;
                            const double uxj = j == 0 ? tt.du.x : tt.du.y;
                            const double hlj = tt.H[l + j];  // H indexed (xx,xy,yy)
                            return dA(i, j) * uxl * uxj + A(i, j) * hlj;
                        };
                        const double j2 = (second(tr, Ar, dAr, 0) - second(tl, Al, dAl, 0)) * n1 +
                                          (second(tr, Ar, dAr, 1) - second(tl, Al, dAl, 1)) * n2;
                        const double nj = j == 0 ? n1 : n2;
                        comp += coef_.beta0 / f.h_e * jb * nj + avg1 + coef_.beta1 * f.h_e * j2;
                        const double ni = i == 0 ? n1 : n2;
                        // correction vector component j accumulates [[b_ij]] n_i
                        (j == 0 ? corr.x : corr.y) += 0.5 * jb * ni;
                    }
                    flux += comp * (i == 0 ? n1 : n2);
                }
            }
            face_flux_[fi * ne + q] = flux;
            face_corr_[(fi * ne + q) * 2] = corr.x;
            face_corr_[(fi * ne + q) * 2 + 1] = corr.y;
        }
    }

    // Cell phase.
    for (int c = 0; c < mesh_->n_cells(); ++c) {
        const CellMap& m = basis_->cell_map(c);
        const double a = m.inv_jac(0, 0), b = m.inv_jac(0, 1), ci = m.inv_jac(1, 0),
                     d = m.inv_jac(1, 1);
        const double* cv = U.cell(c);
        double* rv = rates.cell(c);
        std::memset(rv, 0, sizeof(double) * nb);

        for (int q = 0; q < nq; ++q) {
            const double* psi = basis_->vol_values(q);
            const double* dpsi = basis_->vol_grads(q);
            double s = 0, gr = 0, gs = 0;
            for (int j = 0; j < nb; ++j) {
                s += cv[j] * psi[j];
                gr += cv[j] * dpsi[2 * j];
                gs += cv[j] * dpsi[2 * j + 1];
            }
            const double u = s * m.scale;
            const Vec2 du{(a * gr + ci * gs) * m.scale, (b * gr + d * gs) * m.scale};
            const Vec2 Adu = problem_.A(u).apply(du);
            const double wdet = vw[q] * m.det_jac;
            // - int A(u) grad u . grad phi
            const double cx = -wdet * m.scale * Adu.x, cy = -wdet * m.scale * Adu.y;
            const double ga = cx * a + cy * b, gc = cx * ci + cy * d;
            for (int j = 0; j < nb; ++j) rv[j] += ga * dpsi[2 * j] + gc * dpsi[2 * j + 1];
        }

        for (int le = 0; le < 3; ++le) {
            const int fi = mesh_->cell_faces[c][le];
            const Face& f = mesh_->faces[fi];
            const bool is_left = (f.left_cell == c && f.left_local == le);
            const double sgn = is_left ? 1.0 : -1.0;
            const bool rev = is_left ? false : f.right_reversed;
            for (int q = 0; q < ne; ++q) {
                const double flux = face_flux_[fi * ne + q];
                const double* corr = &face_corr_[(fi * ne + q) * 2];
                const double* psi = basis_->trace_values(le, rev, q);
                const double* dpsi = basis_->trace_grads(le, rev, q);
                const double wl = ew[q] * f.length;
                // + oint flux phi_j, - 1/2 oint [[u]] grad phi_j . xi
                const double fw = sgn * wl * flux * m.scale;
                const double crx = -wl * corr[0] * m.scale, cry = -wl * corr[1] * m.scale;
                const double ga = crx * a + cry * b, gc = crx * ci + cry * d;
                for (int j = 0; j < nb; ++j)
                    rv[j] += fw * psi[j] + ga * dpsi[2 * j] + gc * dpsi[2 * j + 1];
            }
        }
    }
}

double ScalarOperator::cfl_denominator(const SolutionField& U) const {
    const int nq = basis_->volume_rule().size();
    const int nb = basis_->count();
    const double h = mesh_->min_diameter();
    double worst = 0.0;
    for (int c = 0; c < mesh_->n_cells(); ++c) {
        const CellMap& m = basis_->cell_map(c);
        const double* cv = U.cell(c);
        for (int q = 0; q < nq; ++q) {
            const double* psi = basis_->vol_values(q);
            double s = 0;
            for (int j = 0; j < nb; ++j) s += cv[j] * psi[j];
            const Mat2 A = problem_.A(s * m.scale);
            // spectral radius bound of a 2x2 matrix
            const double tr = A(0, 0) + A(1, 1);
            const double det = A.det();
            const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
            worst = std::max(worst, std::abs(0.5 * tr) + disc);
        }
    }
    return worst / (h * h);
}

}  // namespace dgns
