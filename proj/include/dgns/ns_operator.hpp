#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dgns/boundary.hpp"
#include "dgns/ddg.hpp"
#include "dgns/field.hpp"
#include "dgns/threading.hpp"

namespace dgns {

/// Optional source S(x, y, t) added to dQ/dt (manufactured solutions).
using SourceFn = std::function<void(const Vec2&, double, double*)>;

/// Semi-discrete DDGIC operator for the 2-D compressible Navier-Stokes
/// system: volume fluxes, local Lax-Friedrichs convective flux, the DDG
/// gradient numerical flux contracted with the direction vectors, and the
/// interface correction. Faces are assembled once and scattered to both
/// neighbors; results are bitwise independent of the worker count.
class NsOperator {
  public:
    NsOperator(const BasisSet& basis, const GasModel& gas,
               std::vector<BoundaryCondition> bc_by_tag, std::shared_ptr<WorkerPool> pool = nullptr);

    /// Compute dQ/dt for every modal coefficient.
    void compute(const SolutionField& U, double t, SolutionField& rates) const;

    /// Per-equation Euclidean norm of the rates.
    static std::array<double, 4> residual_norms(const SolutionField& rates);

    /// max over cells of max{(a_K + |u_K|)/h, mu_K/h^2} with h the global
    /// minimum inscribed diameter (CFL denominator).
    double cfl_denominator(const SolutionField& U) const;

    double min_volume_weight() const { return basis_->min_volume_weight(); }

    const GasModel& gas() const { return gas_; }
    const BasisSet& basis() const { return *basis_; }

    // Diagnostic switches.
    void set_convection(bool on) { convection_ = on; }
    /// Replace the physics diffusion by one constant matrix applied to each
    /// variable independently (linear-degeneration checks).
    void set_constant_diffusion(std::optional<Mat2> A) { const_diff_ = A; }
    void set_source(SourceFn s) { source_ = std::move(s); }

  private:
    void face_phase(const SolutionField& U, long f0, long f1) const;
    void cell_phase(const SolutionField& U, double t, SolutionField& rates, long c0, long c1) const;
    void load_trace(const SolutionField& U, int cell, int le, bool rev, int q, NsTrace& out) const;

    const BasisSet* basis_;
    const Mesh* mesh_;
    GasModel gas_;
    std::vector<BoundaryCondition> bc_by_tag_;
    FluxCoefficients coef_;
    bool convection_ = true;
    std::optional<Mat2> const_diff_;
    SourceFn source_;
    std::shared_ptr<WorkerPool> pool_;

    // Per-face scratch: total normal flux and correction vectors per point.
    mutable std::vector<double> face_flux_;   // [face][q][4]
    mutable std::vector<double> face_corr_;   // [face][q][4][2]
};

}  // namespace dgns
