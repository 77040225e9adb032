#pragma once

#include <vector>

#include "dgns/mesh.hpp"
#include "dgns/quadrature.hpp"

namespace dgns {

/// Orthonormal polynomial basis on the reference triangle, stored as exact
/// monomial coefficient vectors. Physical-cell bases are the reference
/// basis composed with the inverse affine map and scaled by 1/sqrt(det J),
/// which preserves orthonormality exactly under affine maps.
class ReferenceBasis {
  public:
    explicit ReferenceBasis(int degree);

    int degree() const { return degree_; }
    int count() const { return count_; }

    /// Values of all basis functions at a reference point.
    void eval(const Vec2& p, double* values) const;
    /// Values, gradients (2 per function) and Hessians (xx,xy,yy).
    void eval_all(const Vec2& p, double* values, double* grads, double* hess) const;

  private:
    int degree_, count_;
    std::vector<int> mono_p_, mono_q_;
    std::vector<double> coef_;  // [j * count_ + monomial]
};

/// Per-edge reference trace layout: local edge `le` runs from reference
/// vertex le to vertex (le+1)%3 as the parameter goes 0 -> 1.
Vec2 reference_edge_point(int local_edge, double t);

struct CellMap {
    Mat2 jac;      // reference -> physical
    Mat2 inv_jac;
    double det_jac = 0;  // 2 * area
    double scale = 0;    // 1/sqrt(det_jac)
    Vec2 origin;         // physical image of reference (0,0)
    Vec2 to_physical(const Vec2& r) const { return origin + jac.apply(r); }
    Vec2 to_reference(const Vec2& x) const { return inv_jac.apply(x - origin); }
};

/// Basis + quadrature tabulation shared by all cells of a mesh.
///
/// Tabulated data lives on the reference triangle; consumers apply the
/// per-cell affine transform (constant Jacobian chain rule).
class BasisSet {
  public:
    BasisSet(const Mesh& mesh, int degree);

    int degree() const { return degree_; }
    int count() const { return nb_; }
    const Mesh& mesh() const { return *mesh_; }
    const ReferenceBasis& reference() const { return ref_; }
    const TriangleRule& volume_rule() const { return vol_rule_; }
    const EdgeRule& edge_rule() const { return edge_rule_; }
    const CellMap& cell_map(int c) const { return maps_[c]; }
    double min_volume_weight() const;  // omega of the CFL condition

    // Reference tabulations. Volume: [q][j]; gradients [q][j][2].
    const double* vol_values(int q) const { return &vol_val_[q * nb_]; }
    const double* vol_grads(int q) const { return &vol_grad_[q * nb_ * 2]; }

    // Trace tabulations indexed by (local edge, reversed, quad point).
    const double* trace_values(int le, bool rev, int q) const {
        return &tr_val_[((le * 2 + rev) * edge_rule_.size() + q) * nb_];
    }
    const double* trace_grads(int le, bool rev, int q) const {
        return &tr_grad_[((le * 2 + rev) * edge_rule_.size() + q) * nb_ * 2];
    }
    const double* trace_hess(int le, bool rev, int q) const {
        return &tr_hess_[((le * 2 + rev) * edge_rule_.size() + q) * nb_ * 3];
    }

    /// Physical basis evaluation at an arbitrary point of cell c
    /// (diagnostics path; assembly uses the tabulated data).
    void eval_physical(int c, const Vec2& x, double* values, double* grads, double* hess) const;
    /// Physical trace evaluation at edge parameter t of the cell's own edge.
    void eval_trace_physical(int c, int local_edge, double t, double* values, double* grads,
                             double* hess) const;

  private:
    const Mesh* mesh_;
    int degree_, nb_;
    ReferenceBasis ref_;
    TriangleRule vol_rule_;
    EdgeRule edge_rule_;
    std::vector<CellMap> maps_;
    std::vector<double> vol_val_, vol_grad_;
    std::vector<double> tr_val_, tr_grad_, tr_hess_;
};

}  // namespace dgns
