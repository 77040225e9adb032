#include "dgns/ns_operator.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace dgns {

NsOperator::NsOperator(const BasisSet& basis, const GasModel& gas,
                       std::vector<BoundaryCondition> bc_by_tag, std::shared_ptr<WorkerPool> pool)
    : basis_(&basis),
      mesh_(&basis.mesh()),
      gas_(gas),
      bc_by_tag_(std::move(bc_by_tag)),
      coef_(FluxCoefficients::for_degree(basis.degree())),
      pool_(pool ? std::move(pool) : std::make_shared<WorkerPool>(1)) {
    const size_t nfq = mesh_->faces.size() * basis_->edge_rule().size();
    face_flux_.resize(nfq * 4);
    face_corr_.resize(nfq * 8);
}

void NsOperator::load_trace(const SolutionField& U, int cell, int le, bool rev, int q,
                            NsTrace& out) const {
    const int nb = basis_->count();
    const double* psi = basis_->trace_values(le, rev, q);
    const double* dpsi = basis_->trace_grads(le, rev, q);
    const double* hpsi = basis_->trace_hess(le, rev, q);
    const CellMap& m = basis_->cell_map(cell);
    const double* cc = U.cell(cell);
    const double a = m.inv_jac(0, 0), b = m.inv_jac(0, 1), c = m.inv_jac(1, 0), d = m.inv_jac(1, 1);
    for (int v = 0; v < 4; ++v) {
        const double* cv = cc + v * nb;
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
        out.Q[v] = s * m.scale;
        out.dQ[v][0] = (a * gr + c * gs) * m.scale;
        out.dQ[v][1] = (b * gr + d * gs) * m.scale;
        // H_x = J^{-T} H_r J^{-1}
        out.HQ[v][0] = (a * (hrr * a + hrs * c) + c * (hrs * a + hss * c)) * m.scale;
        out.HQ[v][1] = (a * (hrr * b + hrs * d) + c * (hrs * b + hss * d)) * m.scale;
        out.HQ[v][2] = (b * (hrr * b + hrs * d) + d * (hrs * b + hss * d)) * m.scale;
    }
}

void NsOperator::face_phase(const SolutionField& U, long f0, long f1) const {
    const int ne = basis_->edge_rule().size();
    NsTrace inner, outer;
    for (long fi = f0; fi < f1; ++fi) {
        const Face& f = mesh_->faces[fi];
        for (int q = 0; q < ne; ++q) {
            load_trace(U, f.left_cell, f.left_local, false, q, inner);
            if (!f.boundary()) {
                load_trace(U, f.right_cell, f.right_local, f.right_reversed, q, outer);
            } else {
                const auto& bc = bc_by_tag_[f.tag];
                try {
                    outer = ghost_state(bc, inner, f.normal, gas_);
                } catch (const InvalidStateError& err) {
                    const double t = basis_->edge_rule().points[q];
                    const Vec2 x = f.p0 + t * (f.p1 - f.p0);
                    std::ostringstream os;
                    os << err.what() << " [boundary face of cell " << f.left_cell << " at ("
                       << x.x << "," << x.y << ")]";
                    throw InvalidStateError(os.str());
                }
            }

            double* flux = &face_flux_[(fi * ne + q) * 4];
            double* corr = &face_corr_[(fi * ne + q) * 8];
            try {
                Vec2 cr[4];
                double fv_hat[4];
                if (const_diff_) {
                    constant_diffusion_face_flux(inner, outer, *const_diff_, f.normal, f.h_e, coef_,
                                                 fv_hat, cr);
                    for (int m = 0; m < 4; ++m) flux[m] = -fv_hat[m];
                } else {
                    const Primitives sl = primitives(inner.Q, gas_);
                    const Primitives sr = primitives(outer.Q, gas_);
                    double qa[4];
                    for (int m = 0; m < 4; ++m) qa[m] = 0.5 * (inner.Q[m] + outer.Q[m]);
                    const Primitives sa = primitives(qa, gas_);
                    ns_viscous_face_flux(inner, outer, sa, f.normal, f.h_e, coef_, gas_, fv_hat, cr);
                    if (convection_) {
                        double fc_hat[4];
                        lax_friedrichs_flux(sl, sr, inner.Q, outer.Q, f.normal, fc_hat);
                        for (int m = 0; m < 4; ++m) flux[m] = fc_hat[m] - fv_hat[m];
                    } else {
                        for (int m = 0; m < 4; ++m) flux[m] = -fv_hat[m];
                    }
                }
                for (int m = 0; m < 4; ++m) {
                    corr[2 * m] = cr[m].x;
                    corr[2 * m + 1] = cr[m].y;
                }
            } catch (const InvalidStateError& err) {
                const double t = basis_->edge_rule().points[q];
                const Vec2 x = f.p0 + t * (f.p1 - f.p0);
                std::ostringstream os;
                os << err.what() << " [face between cells " << f.left_cell << "/" << f.right_cell
                   << " at (" << x.x << "," << x.y << ")]";
                throw InvalidStateError(os.str());
            }
        }
    }
}

void NsOperator::cell_phase(const SolutionField& U, double t, SolutionField& rates, long c0,
                            long c1) const {
    const int nb = basis_->count();
    const int nq = basis_->volume_rule().size();
    const int ne = basis_->edge_rule().size();
    const auto& vw = basis_->volume_rule().weights;
    const auto& ew = basis_->edge_rule().weights;

    for (long c = c0; c < c1; ++c) {
        const CellMap& m = basis_->cell_map(c);
        const double a = m.inv_jac(0, 0), b = m.inv_jac(0, 1), ci = m.inv_jac(1, 0),
                     d = m.inv_jac(1, 1);
        const double* cc = U.cell(c);
        double* rr = rates.cell(c);
        std::memset(rr, 0, sizeof(double) * 4 * nb);

        double Q[4], gQ[4][2], S[4];
        double fx[4], fy[4], fv[4], gv[4];
        for (int q = 0; q < nq; ++q) {
            const double* psi = basis_->vol_values(q);
            const double* dpsi = basis_->vol_grads(q);
            for (int v = 0; v < 4; ++v) {
                const double* cv = cc + v * nb;
                double s = 0, gr = 0, gs = 0;
                for (int j = 0; j < nb; ++j) {
                    s += cv[j] * psi[j];
                    gr += cv[j] * dpsi[2 * j];
                    gs += cv[j] * dpsi[2 * j + 1];
                }
                Q[v] = s * m.scale;
                gQ[v][0] = (a * gr + ci * gs) * m.scale;
                gQ[v][1] = (b * gr + d * gs) * m.scale;
            }

            try {
                if (const_diff_) {
                    for (int v = 0; v < 4; ++v) {
                        const Vec2 Ag = const_diff_->apply({gQ[v][0], gQ[v][1]});
                        fx[v] = -Ag.x;
                        fy[v] = -Ag.y;
                    }
                    if (convection_) {
                        const Primitives s = primitives(Q, gas_);
                        double fc[4], gc[4];
                        convective_flux(s, fc, gc);
                        for (int v = 0; v < 4; ++v) {
                            fx[v] += fc[v];
                            fy[v] += gc[v];
                        }
                    }
                } else {
                    const Primitives s = primitives(Q, gas_);
                    viscous_flux(s, gQ, gas_, fv, gv);
                    if (convection_) {
                        double fc[4], gc[4];
                        convective_flux(s, fc, gc);
                        for (int v = 0; v < 4; ++v) {
                            fx[v] = fc[v] - fv[v];
                            fy[v] = gc[v] - gv[v];
                        }
                    } else {
                        for (int v = 0; v < 4; ++v) {
                            fx[v] = -fv[v];
                            fy[v] = -gv[v];
                        }
                    }
                }
            } catch (const InvalidStateError& err) {
                const Vec2 x = m.to_physical(basis_->volume_rule().points[q]);
                std::ostringstream os;
                os << err.what() << " [cell " << c << " volume point (" << x.x << "," << x.y << ")]";
                throw InvalidStateError(os.str());
            }

            const double wdet = vw[q] * m.det_jac;
            const bool with_source = static_cast<bool>(source_);
            if (with_source) {
                const Vec2 x = m.to_physical(basis_->volume_rule().points[q]);
                source_(x, t, S);
            }
            for (int v = 0; v < 4; ++v) {
                double* rv = rr + v * nb;
                // physical grad phi_j = scale * J^{-T} grad_ref psi_j
                const double cx = wdet * m.scale * fx[v], cy = wdet * m.scale * fy[v];
                const double gxa = cx * a + cy * b, gxc = cx * ci + cy * d;
                for (int j = 0; j < nb; ++j) rv[j] += gxa * dpsi[2 * j] + gxc * dpsi[2 * j + 1];
                if (with_source) {
                    const double sw = wdet * m.scale * S[v];
                    for (int j = 0; j < nb; ++j) rv[j] += sw * psi[j];
                }
            }
        }

        // Face contributions: - oint (Fhat_c - Fhat_v).n phi_j - oint I_corr
        for (int le = 0; le < 3; ++le) {
            const long fi = mesh_->cell_faces[c][le];
            const Face& f = mesh_->faces[fi];
            const bool is_left = (f.left_cell == c && f.left_local == le);
            const double sgn = is_left ? 1.0 : -1.0;
            const bool rev = is_left ? false : f.right_reversed;
            for (int q = 0; q < ne; ++q) {
                const double* flux = &face_flux_[(fi * ne + q) * 4];
                const double* corr = &face_corr_[(fi * ne + q) * 8];
                const double* psi = basis_->trace_values(le, rev, q);
                const double* dpsi = basis_->trace_grads(le, rev, q);
                const double wl = ew[q] * f.length;
                for (int v = 0; v < 4; ++v) {
                    double* rv = rr + v * nb;
                    const double fw = -sgn * wl * flux[v] * m.scale;
                    const double crx = -wl * corr[2 * v] * m.scale;
                    const double cry = -wl * corr[2 * v + 1] * m.scale;
                    // grad phi in physical coords via J^{-T}
                    const double gr = crx * a + cry * b, gs = crx * ci + cry * d;
                    for (int j = 0; j < nb; ++j)
                        rv[j] += fw * psi[j] + gr * dpsi[2 * j] + gs * dpsi[2 * j + 1];
                }
            }
        }
    }
}

void NsOperator::compute(const SolutionField& U, double t, SolutionField& rates) const {
    const long nf = static_cast<long>(mesh_->faces.size());
    std::exception_ptr error;
    std::mutex err_mu;
    auto guard = [&](auto&& fn) {
        return [&, fn](long b, long e, int) {
            try {
                fn(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!error) error = std::current_exception();
            }
        };
    };
    pool_->parallel_for(nf, guard([&](long b, long e) { face_phase(U, b, e); }));
    if (error) std::rethrow_exception(error);
    pool_->parallel_for(mesh_->n_cells(),
                        guard([&](long b, long e) { cell_phase(U, t, rates, b, e); }));
    if (error) std::rethrow_exception(error);
    if (!rates.all_finite()) throw SolverError("non-finite residual detected");
}

std::array<double, 4> NsOperator::residual_norms(const SolutionField& rates) {
    const auto n = rates.coefficient_norms();
    return {n[0], n[1], n[2], n[3]};
}

double NsOperator::cfl_denominator(const SolutionField& U) const {
    const int nq = basis_->volume_rule().size();
    const int nb = basis_->count();
    const double h = mesh_->min_diameter();
    double worst = 0.0;
    for (int c = 0; c < mesh_->n_cells(); ++c) {
        const CellMap& m = basis_->cell_map(c);
        const double* cc = U.cell(c);
        double amax = 0, mumax = 0;
        for (int q = 0; q < nq; ++q) {
            const double* psi = basis_->vol_values(q);
            double Q[4];
            for (int v = 0; v < 4; ++v) {
                const double* cv = cc + v * nb;
                double s = 0;
                for (int j = 0; j < nb; ++j) s += cv[j] * psi[j];
                Q[v] = s * m.scale;
            }
            try {
                const Primitives s = primitives(Q, gas_);
                amax = std::max(amax, s.a + std::hypot(s.u, s.v));
                mumax = std::max(mumax, s.mu);
            } catch (const InvalidStateError& err) {
                std::ostringstream os;
                os << err.what() << " [cell " << c << " during CFL evaluation]";
                throw InvalidStateError(os.str());
            }
        }
        worst = std::max(worst, std::max(amax / h, mumax / (h * h)));
    }
    return worst;
}

}  // namespace dgns
