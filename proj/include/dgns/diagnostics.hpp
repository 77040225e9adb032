#pragma once

#include <string>
#include <vector>

#include "dgns/boundary.hpp"
#include "dgns/exact_solutions.hpp"
#include "dgns/field.hpp"

namespace dgns {

struct ErrorNorms {
    std::vector<double> l2;    // per variable
    std::vector<double> linf;
};

/// L2 error by a quadrature rule exact to degree k+1; L-infinity as the max
/// over 361 sample points per cell (19x19 tensor grid on the collapsed
/// square mapped onto the triangle). `nudge` pulls every sample point toward
/// the cell centroid by that relative amount; reference-field comparisons
/// use it to disambiguate which side of a cell interface to sample.
ErrorNorms error_norms(const SolutionField& field,
                       const std::function<void(const Vec2&, double*)>& exact, double nudge = 0.0);

/// log2(e_coarse / e_fine) for a mesh ratio of 2.
double convergence_order(double e_coarse, double e_fine);
/// General mesh ratio.
double convergence_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Point location + field evaluation over an unstructured mesh.
class FieldSampler {
  public:
    explicit FieldSampler(const SolutionField& field);

    /// Conserved state at a physical point; throws if outside the mesh.
    void sample(const Vec2& x, double* values) const;
    void sample(const Vec2& x, double* values, double* grads) const;
    int locate(const Vec2& x) const;  // cell index, -1 if not found

  private:
    const SolutionField* field_;
    Vec2 lo_, hi_;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<int>> bins_;
};

struct WallSample {
    Vec2 position;
    Vec2 normal;       // outward from the fluid into the wall
    double arc = 0;    // cumulative arc length along the tag
    double p = 0;      // wall pressure
    double tau_w = 0;  // signed tangential viscous stress
    double cf = 0;     // skin friction coefficient
    double cp = 0;     // pressure coefficient
};

/// Interior-trace wall data at `per_edge` points on every edge of the tag.
std::vector<WallSample> wall_quantities(const SolutionField& field, const GasModel& gas,
                                        const std::string& wall_tag, const FreestreamState& fs,
                                        int per_edge = 20);

struct AeroCoefficients {
    double cd = 0, cl = 0;
};

/// Pressure + viscous force integral over a closed wall contour,
/// normalized by 1/2 rho_inf U_inf^2 D.
AeroCoefficients aero_coefficients(const SolutionField& field, const GasModel& gas,
                                   const std::string& wall_tag, const FreestreamState& fs,
                                   double ref_length);

struct WakeMetrics {
    double theta_sep = 0;  // separation angle, degrees from the front stagnation point
    double wake_length = 0;   // L_w / D
    double center_a = 0;      // a / D, streamwise distance of the vortex core from the rear point
    double center_b = 0;      // b / D, transverse distance between the two cores
};

/// Steady-cylinder wake characterization; cylinder centered at the origin.
WakeMetrics wake_metrics(const SolutionField& field, const GasModel& gas,
                         const std::string& wall_tag, const FreestreamState& fs, double diameter);

struct ForceRecord {
    double t;
    double cd, cl;
};

/// Strouhal number from the mean zero-crossing spacing of C_l - mean(C_l),
/// after discarding the first half of the record. Requires at least five
/// full periods in the retained window.
double strouhal(const std::vector<ForceRecord>& history, double diameter, double velocity);

/// Mean and half peak-to-peak amplitude over the retained window.
struct OscillationStats {
    double cd_mean = 0, cd_amplitude = 0;
    double cl_mean = 0, cl_amplitude = 0;
};
OscillationStats oscillation_stats(const std::vector<ForceRecord>& history);

/// Legacy VTK ASCII export with per-cell subsampling; point data rho, u, v,
/// p, mach and vorticity scaled by ref_length/ref_velocity.
void export_vtk(const SolutionField& field, const GasModel& gas, const std::string& path,
                double ref_length = 1.0, double ref_velocity = 1.0);

/// Headered CSV with full double precision.
void export_csv(const std::string& path, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows);

}  // namespace dgns
