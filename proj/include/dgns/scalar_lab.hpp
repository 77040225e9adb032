#pragma once

#include <functional>
#include <optional>

#include "dgns/ddg.hpp"
#include "dgns/field.hpp"

namespace dgns {

/// Scalar nonlinear diffusion problem u_t = div(A(u) grad u) with periodic
/// boundaries. The original-DDG path additionally needs the antiderivative
/// table b_ij(u) with b_ij' = a_ij, and a_ij' for the second-derivative jump
/// term; both are supplied as closures since b_ij may not exist in closed
/// form for general coefficients.
struct ScalarDiffusionProblem {
    std::function<Mat2(double)> A;
    std::function<Mat2(double)> B;   // optional antiderivative of A
    std::function<Mat2(double)> dA;  // optional derivative of A
};

class ScalarOperator {
  public:
    enum class Scheme { ddgic_new, ddg_original };

    ScalarOperator(const BasisSet& basis, ScalarDiffusionProblem problem,
                   Scheme scheme = Scheme::ddgic_new);

    void compute(const SolutionField& U, double t, SolutionField& rates) const;

    /// CFL denominator: max spectral radius of A(u) over quadrature points
    /// divided by h^2 (diffusion-limited).
    double cfl_denominator(const SolutionField& U) const;

    double min_volume_weight() const { return basis_->min_volume_weight(); }

  private:
    struct Trace {
        double u;
        Vec2 du;
        double H[3];
    };
    void load_trace(const SolutionField& U, int cell, int le, bool rev, int q, Trace& out) const;

    const BasisSet* basis_;
    const Mesh* mesh_;
    ScalarDiffusionProblem problem_;
    Scheme scheme_;
    FluxCoefficients coef_;
    mutable std::vector<double> face_flux_;  // [face][q]
    mutable std::vector<double> face_corr_;  // [face][q][2]
};

}  // namespace dgns
