#include "dgns/basis.hpp"

#include <cmath>

namespace dgns {

namespace {

// Exact monomial moment on the reference triangle: p! q! / (p+q+2)!.
long double tri_moment(int p, int q) {
    long double v = 1.0L;
    for (int i = 1; i <= p; ++i) v *= static_cast<long double>(i);
    for (int i = 1; i <= q; ++i) v *= static_cast<long double>(i);
    for (int i = 1; i <= p + q + 2; ++i) v /= static_cast<long double>(i);
    return v;
}

}  // namespace

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
    if (degree < 0 || degree > 12) throw SolverError("basis degree out of range");
    count_ = (degree + 1) * (degree + 2) / 2;
    for (int d = 0; d <= degree; ++d)
        for (int p = d; p >= 0; --p) {
            mono_p_.push_back(p);
            mono_q_.push_back(d - p);
        }
    const int n = count_;
    std::vector<long double> moments(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            moments[a * n + b] = tri_moment(mono_p_[a] + mono_p_[b], mono_q_[a] + mono_q_[b]);

    auto inner = [&](const long double* u, const long double* v) {
        long double s = 0;
        for (int a = 0; a < n; ++a) {
            long double t = 0;
            for (int b = 0; b < n; ++b) t += moments[a * n + b] * v[b];
            s += u[a] * t;
        }
        return s;
    };

    // Modified Gram-Schmidt on the monomials in extended precision, run
    // twice; the second pass removes the residual non-orthogonality of the
    // first. The monomial Gram matrix is ill-conditioned already at k = 4,
    // so double-precision inner products would leave ~1e-12 off-diagonals.
    std::vector<long double> work(n * n, 0.0L);
    for (int j = 0; j < n; ++j) work[j * n + j] = 1.0L;
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < n; ++j) {
            long double* cj = &work[j * n];
            for (int i = 0; i < j; ++i) {
                const long double* ci = &work[i * n];
                const long double proj = inner(cj, ci);
                for (int a = 0; a < n; ++a) cj[a] -= proj * ci[a];
            }
            const long double nrm = std::sqrt(inner(cj, cj));
            if (!(nrm > 0)) throw SolverError("basis construction failed (rank deficiency)");
            for (int a = 0; a < n; ++a) cj[a] /= nrm;
        }
    }
    coef_.assign(n * n, 0.0);
    for (int i = 0; i < n * n; ++i) coef_[i] = static_cast<double>(work[i]);
}

void ReferenceBasis::eval(const Vec2& p, double* values) const {
    const int n = count_;
    double powr[13], pows[13];
    powr[0] = pows[0] = 1.0;
    for (int d = 1; d <= degree_; ++d) {
        powr[d] = powr[d - 1] * p.x;
        pows[d] = pows[d - 1] * p.y;
    }
    for (int j = 0; j < n; ++j) {
        double v = 0;
        const double* c = &coef_[j * n];
        for (int a = 0; a < n; ++a) v += c[a] * powr[mono_p_[a]] * pows[mono_q_[a]];
        values[j] = v;
    }
}

void ReferenceBasis::eval_all(const Vec2& p, double* values, double* grads, double* hess) const {
    const int n = count_;
    double powr[13], pows[13];
    powr[0] = pows[0] = 1.0;
    for (int d = 1; d <= degree_; ++d) {
        powr[d] = powr[d - 1] * p.x;
        pows[d] = pows[d - 1] * p.y;
    }
    auto pr = [&](int e) { return e < 0 ? 0.0 : powr[e]; };
    auto ps = [&](int e) { return e < 0 ? 0.0 : pows[e]; };
    for (int j = 0; j < n; ++j) {
        const double* c = &coef_[j * n];
        double v = 0, gr = 0, gs = 0, hrr = 0, hrs = 0, hss = 0;
        for (int a = 0; a < n; ++a) {
            const int mp = mono_p_[a], mq = mono_q_[a];
            const double ca = c[a];
            v += ca * powr[mp] * pows[mq];
            gr += ca * mp * pr(mp - 1) * pows[mq];
            gs += ca * mq * powr[mp] * ps(mq - 1);
            hrr += ca * mp * (mp - 1) * pr(mp - 2) * pows[mq];
            hrs += ca * mp * mq * pr(mp - 1) * ps(mq - 1);
            hss += ca * mq * (mq - 1) * powr[mp] * ps(mq - 2);
        }
        values[j] = v;
        grads[2 * j] = gr;
        grads[2 * j + 1] = gs;
        hess[3 * j] = hrr;
        hess[3 * j + 1] = hrs;
        hess[3 * j + 2] = hss;
    }
}

Vec2 reference_edge_point(int local_edge, double t) {
    switch (local_edge) {
        case 0: return {t, 0.0};
        case 1: return {1.0 - t, t};
        case 2: return {0.0, 1.0 - t};
    }
    throw SolverError("local edge index out of range");
}

BasisSet::BasisSet(const Mesh& mesh, int degree)
    : mesh_(&mesh),
      degree_(degree),
      nb_((degree + 1) * (degree + 2) / 2),
      ref_(degree),
      vol_rule_(triangle_rule(2 * degree + 1)),
      edge_rule_(gauss_legendre(degree + 1)) {
    if (degree < 1) throw SolverError("BasisSet requires degree >= 1");
    maps_.resize(mesh.n_cells());
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto xy = mesh.cell_coords(c);
        CellMap m;
        m.origin = xy[0];
        m.jac = Mat2{{xy[1].x - xy[0].x, xy[2].x - xy[0].x, xy[1].y - xy[0].y, xy[2].y - xy[0].y}};
        m.det_jac = m.jac.det();
        if (!(m.det_jac > 0)) throw SolverError("cell " + std::to_string(c) + " has non-positive Jacobian");
        m.inv_jac = m.jac.inverse();
        m.scale = 1.0 / std::sqrt(m.det_jac);
        maps_[c] = m;
    }

    const int nq = vol_rule_.size();
    vol_val_.resize(nq * nb_);
    vol_grad_.resize(nq * nb_ * 2);
    std::vector<double> hess_scratch(nb_ * 3);
    for (int q = 0; q < nq; ++q)
        ref_.eval_all(vol_rule_.points[q], &vol_val_[q * nb_], &vol_grad_[q * nb_ * 2],
                      hess_scratch.data());

    const int ne = edge_rule_.size();
    tr_val_.resize(3 * 2 * ne * nb_);
    tr_grad_.resize(3 * 2 * ne * nb_ * 2);
    tr_hess_.resize(3 * 2 * ne * nb_ * 3);
    for (int le = 0; le < 3; ++le) {
        for (int rev = 0; rev < 2; ++rev) {
            for (int q = 0; q < ne; ++q) {
                const double t = rev ? 1.0 - edge_rule_.points[q] : edge_rule_.points[q];
                const Vec2 rp = reference_edge_point(le, t);
                const size_t base = ((le * 2 + rev) * ne + q);
                ref_.eval_all(rp, &tr_val_[base * nb_], &tr_grad_[base * nb_ * 2],
                              &tr_hess_[base * nb_ * 3]);
            }
        }
    }
}

double BasisSet::min_volume_weight() const { return min_quadrature_weight(vol_rule_); }

void BasisSet::eval_physical(int c, const Vec2& x, double* values, double* grads, double* hess) const {
    const CellMap& m = maps_[c];
    const Vec2 r = m.to_reference(x);
    std::vector<double> gv(nb_ * 2), hv(nb_ * 3);
    ref_.eval_all(r, values, gv.data(), hv.data());
    const Mat2& ij = m.inv_jac;
    for (int j = 0; j < nb_; ++j) {
        values[j] *= m.scale;
        if (grads) {
            const Vec2 g = ij.apply_transpose({gv[2 * j], gv[2 * j + 1]});
            grads[2 * j] = m.scale * g.x;
            grads[2 * j + 1] = m.scale * g.y;
        }
        if (hess) {
            // H_x = J^{-T} H_r J^{-1}
            const double hrr = hv[3 * j], hrs = hv[3 * j + 1], hss = hv[3 * j + 2];
            const double a = ij(0, 0), b = ij(0, 1), cJ = ij(1, 0), d = ij(1, 1);
            hess[3 * j] = m.scale * (a * (hrr * a + hrs * cJ) + cJ * (hrs * a + hss * cJ));
            hess[3 * j + 1] = m.scale * (a * (hrr * b + hrs * d) + cJ * (hrs * b + hss * d));
            hess[3 * j + 2] = m.scale * (b * (hrr * b + hrs * d) + d * (hrs * b + hss * d));
        }
    }
}

void BasisSet::eval_trace_physical(int c, int local_edge, double t, double* values, double* grads,
                                   double* hess) const {
    const Vec2 rp = reference_edge_point(local_edge, t);
    eval_physical(c, maps_[c].to_physical(rp), values, grads, hess);
}

}  // namespace dgns
