#pragma once

#include <memory>
#include <optional>

#include "dgns/config.hpp"
#include "dgns/diagnostics.hpp"
#include "dgns/exact_solutions.hpp"
#include "dgns/field_io.hpp"
#include "dgns/mesh_gen.hpp"
#include "dgns/ns_operator.hpp"
#include "dgns/scalar_lab.hpp"
#include "dgns/time_integration.hpp"

namespace dgns {

inline constexpr const char* kVersion = "dgns 1.0.0";

/// A fully wired Navier-Stokes case, ready to advance.
struct CaseRun {
    std::shared_ptr<Mesh> mesh;
    std::shared_ptr<BasisSet> basis;
    std::shared_ptr<WorkerPool> pool;
    GasModel gas;
    std::shared_ptr<NsOperator> op;
    std::shared_ptr<SolutionField> U;
    TimeConfig tcfg;
    RunMode mode = RunMode::final_time;
    std::optional<ExactSolution> exact;  // exact fields for MMS cases
    FreestreamState freestream;
    std::string wall_tag;   // for force/wall diagnostics; empty if none
    double ref_length = 1.0;
    double start_time = 0.0;
};

/// Builds mesh, basis, operator, boundary table and initial condition for a
/// Navier-Stokes case (everything except `scalar-heat`).
CaseRun build_case(const RunConfig& cfg);

/// Runs a case end-to-end and writes artifacts under cfg.output_dir.
/// Returns the process exit status.
int run_case(const RunConfig& cfg);

struct StudyEntry {
    int level = 0, degree = 0;
    double h = 0;
    ErrorNorms errors;
};

struct StudyResult {
    std::vector<StudyEntry> entries;
    std::string table_text;  // aligned error/order table
};

/// Convergence study over mesh levels and polynomial degrees; writes
/// study.csv and study.txt under cfg.output_dir.
StudyResult convergence_study(const RunConfig& cfg, const std::vector<int>& levels,
                              const std::vector<int>& degrees);

/// Per-case protocol defaults (final times, viscosities, freestream, CFL,
/// boundary tables). Called after parsing; file values win.
void apply_case_defaults(RunConfig& cfg);

/// The error target of a case: exact solution (ms1/ms2) or none.
std::optional<ExactSolution> case_exact_solution(const RunConfig& cfg);

/// Initial condition of the pressure-pulse case.
void pressure_pulse_initial(const Vec2& x, double gamma, double Q[4]);

std::string write_manifest(const RunConfig& cfg, const std::vector<std::string>& artifacts);

}  // namespace dgns
