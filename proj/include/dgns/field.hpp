#pragma once

#include <functional>
#include <vector>

#include "dgns/basis.hpp"

namespace dgns {

/// Modal DG field: nvars * N_b coefficients per cell, cell-major layout.
class SolutionField {
  public:
    SolutionField() = default;
    SolutionField(const BasisSet& basis, int nvars);

    int nvars() const { return nvars_; }
    int nb() const { return nb_; }
    int n_cells() const { return n_cells_; }
    const BasisSet& basis() const { return *basis_; }
    const Mesh& mesh() const { return basis_->mesh(); }

    double* cell(int c) { return &coef_[static_cast<size_t>(c) * nvars_ * nb_]; }
    const double* cell(int c) const { return &coef_[static_cast<size_t>(c) * nvars_ * nb_]; }
    double* data() { return coef_.data(); }
    const double* data() const { return coef_.data(); }
    size_t size() const { return coef_.size(); }

    void set_zero();

    /// L2 projection of a pointwise function f(x) -> values[nvars].
    void project(const std::function<void(const Vec2&, double*)>& f);

    /// Field values at a physical point of cell c.
    void eval(int c, const Vec2& x, double* values) const;
    /// Values and gradients.
    void eval(int c, const Vec2& x, double* values, double* grads) const;

    /// Cell average of one variable (orthonormal basis: coefficient of the
    /// constant mode times phi_1).
    double cell_average(int c, int var) const;
    /// Integral of one variable over the domain.
    double domain_integral(int var) const;

    /// Per-variable Euclidean norm over all modal coefficients.
    std::vector<double> coefficient_norms() const;

    bool all_finite() const;

  private:
    const BasisSet* basis_ = nullptr;
    int nvars_ = 0, nb_ = 0, n_cells_ = 0;
    std::vector<double> coef_;
};

}  // namespace dgns
