#include "dgns/cases.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace dgns {

namespace fs = std::filesystem;

namespace {

void default_boundary(RunConfig& cfg, const std::string& name, const std::string& kind,
                      Vec2 shift = {0, 0}) {
    if (cfg.boundaries.count(name)) return;
    BcConfig bc;
    bc.kind = kind;
    bc.shift = shift;
    cfg.boundaries[name] = bc;
}

void default_periodic_square(RunConfig& cfg) {
    default_boundary(cfg, "left", "periodic", {1, 0});
    default_boundary(cfg, "right", "periodic", {-1, 0});
    default_boundary(cfg, "bottom", "periodic", {0, 1});
    default_boundary(cfg, "top", "periodic", {0, -1});
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

void apply_case_defaults(RunConfig& cfg) {
    const std::string& name = cfg.case_name;
    auto set_ft = [&](double T) {
        if (cfg.mode.empty()) cfg.mode = "final_time";
        if (!cfg.final_time) cfg.final_time = T;
    };
    auto set_steady = [&](double tol) {
        if (cfg.mode.empty()) cfg.mode = "steady";
        if (!cfg.steady_tol) cfg.steady_tol = tol;
    };
    auto set_freestream = [&](double rho, double u, double v, double p) {
        if (!cfg.rho_inf) cfg.rho_inf = rho;
        if (!cfg.u_inf) cfg.u_inf = u;
        if (!cfg.v_inf) cfg.v_inf = v;
        if (!cfg.p_inf) cfg.p_inf = p;
    };

    if (name == "ms1") {
        set_ft(2.0 * M_PI);
        if (!cfg.mu) cfg.mu = 1e-3;
        if (!cfg.mesh_level && cfg.mesh_path.empty()) cfg.mesh_level = 0;
        default_periodic_square(cfg);
    } else if (name == "ms2") {
        set_ft(1.0);
        if (!cfg.mu) cfg.mu = 1e-2;
        if (!cfg.mesh_level && cfg.mesh_path.empty()) cfg.mesh_level = 0;
        default_periodic_square(cfg);
    } else if (name == "pulse") {
        set_ft(0.1);
        if (!cfg.mu) cfg.mu = 1e-2;
        if (!cfg.mesh_level && cfg.mesh_path.empty()) cfg.mesh_level = 0;
        default_periodic_square(cfg);
    } else if (name == "scalar-heat") {
        set_ft(0.005);
        if (!cfg.mesh_level && cfg.mesh_path.empty()) cfg.mesh_level = 0;
        default_periodic_square(cfg);
    } else if (name == "plate") {
        // Re = 1e4 on unit plate length, M_inf = 0.3 with a_inf = 1.
        set_steady(1e-5);
        set_freestream(1.0, 0.3, 0.0, 1.0 / cfg.gamma);
        if (!cfg.mu) cfg.mu = 0.3 / 1e4;
        if (!cfg.p_back) cfg.p_back = *cfg.p_inf;
        default_boundary(cfg, "inlet", "inflow_farfield");
        default_boundary(cfg, "top", "inflow_farfield");
        default_boundary(cfg, "outlet", "outflow");
        default_boundary(cfg, "symmetry", "symmetry_plane");
        default_boundary(cfg, "plate", "adiabatic_wall");
    } else if (name == "cylinder-steady") {
        // Re = 40 on the diameter, M_inf = 0.2.
        set_steady(1e-6);
        set_freestream(1.0, 0.2, 0.0, 1.0 / cfg.gamma);
        if (!cfg.mu) cfg.mu = 0.2 / 40.0;
        default_boundary(cfg, "farfield", "inflow_farfield");
        default_boundary(cfg, "cylinder", "adiabatic_wall");
    } else if (name == "cylinder-unsteady") {
        // Re = 75; starts from the stored steady field with a perturbed v.
        set_ft(600.0);
        set_freestream(1.0, 0.2, 0.0, 1.0 / cfg.gamma);
        if (!cfg.mu) cfg.mu = 0.2 / 75.0;
        default_boundary(cfg, "farfield", "inflow_farfield");
        default_boundary(cfg, "cylinder", "adiabatic_wall");
    } else if (name == "freestream") {
        set_ft(1.0);
        if (!cfg.mu) cfg.mu = 1e-3;
        set_freestream(1.0, 0.0, 0.0, 1.0);
        if (!cfg.mesh_level && cfg.mesh_path.empty()) cfg.mesh_level = 0;
        default_periodic_square(cfg);
    } else if (!name.empty()) {
        throw SolverError("unknown case '" + name + "'");
    }
    if (!cfg.cv) cfg.cv = 1.0 / (cfg.gamma - 1.0);
}

std::optional<ExactSolution> case_exact_solution(const RunConfig& cfg) {
    if (cfg.case_name == "ms1") return manufactured_solution_1();
    if (cfg.case_name == "ms2") return manufactured_solution_2();
    return std::nullopt;
}

void pressure_pulse_initial(const Vec2& x, double gamma, double Q[4]) {
    const double cx = std::cos(M_PI * x.x), cy = std::cos(M_PI * x.y);
    Q[0] = 1.0;
    Q[1] = 0.0;
    Q[2] = 0.0;
    Q[3] = 12.0 / (gamma - 1.0) + 0.5 * std::exp(-(cx * cx + cy * cy));
}

namespace {

GasModel gas_from_config(const RunConfig& cfg) {
    GasModel g;
    g.gamma = cfg.gamma;
    g.prandtl = cfg.prandtl;
    g.cv = cfg.cv.value_or(1.0 / (cfg.gamma - 1.0));
    if (cfg.viscosity == "sutherland") {
        g.law = GasModel::ViscosityLaw::sutherland;
        g.mu_ref = cfg.mu_ref;
        g.T_ref = cfg.T_ref;
        g.C_s = cfg.C_s;
    } else {
        g.law = GasModel::ViscosityLaw::constant;
        g.mu_constant = cfg.mu.value_or(0.0);
    }
    return g;
}

std::shared_ptr<Mesh> mesh_from_config(const RunConfig& cfg) {
    const TagTable tags = tag_table_from_config(cfg);
    if (!cfg.mesh_path.empty())
        return std::make_shared<Mesh>(load_mesh(cfg.mesh_path, tags));
    if (cfg.mesh_level)
        return std::make_shared<Mesh>(unit_square_mesh(*cfg.mesh_level, tags, cfg.seed));
    if (cfg.case_name == "plate")
        return std::make_shared<Mesh>(plate_mesh(PlateMeshSpec{}, tags));
    if (cfg.case_name == "cylinder-steady" || cfg.case_name == "cylinder-unsteady")
        return std::make_shared<Mesh>(cylinder_mesh(CylinderMeshSpec{}, tags));
    throw SolverError("case '" + cfg.case_name + "' needs a mesh path or mesh_level");
}

}  // namespace

CaseRun build_case(const RunConfig& cfg) {
    CaseRun run;
    run.gas = gas_from_config(cfg);
    run.mesh = mesh_from_config(cfg);
    run.basis = std::make_shared<BasisSet>(*run.mesh, cfg.degree);
    run.pool = std::make_shared<WorkerPool>(cfg.threads);

    run.freestream.rho = cfg.rho_inf.value_or(1.0);
    run.freestream.u = cfg.u_inf.value_or(0.0);
    run.freestream.v = cfg.v_inf.value_or(0.0);
    run.freestream.p = cfg.p_inf.value_or(1.0);

    std::vector<BoundaryCondition> bc_by_tag(run.mesh->tags.size());
    for (size_t i = 0; i < run.mesh->tags.size(); ++i) {
        const auto& tag = run.mesh->tags[i];
        BoundaryCondition bc;
        bc.kind = tag.kind;
        bc.freestream = run.freestream;
        bc.p_back = cfg.p_back.value_or(run.freestream.p);
        auto it = cfg.boundaries.find(tag.name);
        if (it != cfg.boundaries.end() && it->second.p_back) bc.p_back = *it->second.p_back;
        bc_by_tag[i] = bc;
        if (tag.kind == BcKind::adiabatic_wall) run.wall_tag = tag.name;
    }
    run.op = std::make_shared<NsOperator>(*run.basis, run.gas, bc_by_tag, run.pool);

    run.tcfg.cfl = cfg.cfl;
    run.tcfg.dt_safety = cfg.dt_safety;
    run.tcfg.t_final = cfg.final_time.value_or(0.0);
    run.tcfg.steady_tol = cfg.steady_tol.value_or(-1.0);
    run.tcfg.max_steps = cfg.max_steps;
    run.tcfg.log_every = cfg.log_every;
    run.mode = (cfg.mode == "steady") ? RunMode::steady : RunMode::final_time;

    run.exact = case_exact_solution(cfg);
    run.U = std::make_shared<SolutionField>(*run.basis, 4);

    const GasModel& gas = run.gas;
    if (run.exact) {
        const ExactSolution ex = *run.exact;
        run.U->project([&](const Vec2& x, double* q) { ex.conserved(x.x, x.y, 0.0, gas, q); });
        auto src = *run.exact;
        run.op->set_source(
            [src, gas](const Vec2& x, double t, double* S) { mms_source(src, x.x, x.y, t, gas, S); });
    } else if (cfg.case_name == "pulse") {
        const double gamma = gas.gamma;
        run.U->project([gamma](const Vec2& x, double* q) { pressure_pulse_initial(x, gamma, q); });
    } else if (!cfg.restart.empty()) {
        StoredField st = load_field(cfg.restart);
        if (st.field->nvars() != 4 || st.mesh->n_cells() != run.mesh->n_cells() ||
            st.basis->degree() != cfg.degree)
            throw SolverError("restart field is incompatible with this case setup");
        *run.U = *st.field;
        run.start_time = st.time;
        if (cfg.case_name == "cylinder-unsteady") {
            // Kick the wake: add 1% of U_inf to v inside a unit-radius blob
            // one diameter behind the cylinder.
            const double amp = 0.01 * std::hypot(run.freestream.u, run.freestream.v);
            SolutionField base = *run.U;
            FieldSampler sampler(base);
            run.U->project([&](const Vec2& x, double* q) {
                sampler.sample(x, q);
                const double r2 = (x.x - 1.5) * (x.x - 1.5) + x.y * x.y;
                if (r2 < 1.0) q[2] += q[0] * amp * (1.0 - r2);
            });
        }
    } else {
        const FreestreamState fsv = run.freestream;
        run.U->project([&fsv, &gas](const Vec2& x, double* q) {
            (void)x;
            fsv.conserved(gas, q);
        });
    }
    return run;
}

namespace {

std::string format_norms(const std::vector<double>& v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3);
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

}  // namespace

std::string write_manifest(const RunConfig& cfg, const std::vector<std::string>& artifacts) {
    const fs::path dir(cfg.output_dir);
    std::ostringstream body;
    body << "# run manifest\nversion: " << kVersion << "\n\n--- config ---\n"
         << cfg.serialize() << "\n--- artifacts ---\n";
    for (const auto& name : artifacts) {
        std::ifstream in(dir / name, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        body << name << "  fnv1a:" << std::hex << std::setw(16) << std::setfill('0')
             << fnv1a(ss.str()) << std::dec << std::setfill(' ') << '\n';
    }
    std::ofstream out(dir / "manifest.txt");
    out << body.str();
    return body.str();
}

int run_case(const RunConfig& cfg) {
    for (const auto& w : validate_config(cfg)) std::cerr << "warning: " << w << '\n';
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    std::vector<std::string> artifacts;

    if (cfg.case_name == "scalar-heat") {
        // Scalar lab: heat equation A = I on the periodic square.
        const TagTable tags = tag_table_from_config(cfg);
        Mesh mesh = unit_square_mesh(cfg.mesh_level.value_or(0), tags, cfg.seed);
        BasisSet basis(mesh, cfg.degree);
        ScalarDiffusionProblem prob;
        prob.A = [](double) { return Mat2{{1, 0, 0, 1}}; };
        ScalarOperator op(basis, prob);
        SolutionField u(basis, 1);
        u.project([](const Vec2& x, double* v) {
            v[0] = 1.0 + 0.5 * std::sin(2 * M_PI * x.x) * std::sin(2 * M_PI * x.y);
        });
        TimeConfig tc;
        tc.cfl = cfg.cfl;
        tc.dt_safety = cfg.dt_safety;
        tc.t_final = cfg.final_time.value_or(0.005);
        tc.max_steps = cfg.max_steps;
        auto L = [&](const SolutionField& U, double t, SolutionField& R) { op.compute(U, t, R); };
        auto den = [&](const SolutionField& U) { return op.cfl_denominator(U); };
        const RunResult rr = advance(u, L, den, op.min_volume_weight(), tc, RunMode::final_time);
        const double T = rr.t;
        const double decay = std::exp(-8.0 * M_PI * M_PI * T);
        const ErrorNorms err = error_norms(u, [&](const Vec2& x, double* v) {
            v[0] = 1.0 + 0.5 * decay * std::sin(2 * M_PI * x.x) * std::sin(2 * M_PI * x.y);
        });
        export_csv((dir / "errors.csv").string(), {"variable", "l2", "linf"},
                   {{0.0, err.l2[0], err.linf[0]}});
        artifacts.push_back("errors.csv");
        std::cout << "scalar-heat: T=" << T << " L2=" << err.l2[0] << " Linf=" << err.linf[0] << '\n';
        write_manifest(cfg, artifacts);
        return 0;
    }

    CaseRun run = build_case(cfg);
    std::ofstream log(dir / "log.csv");
    log << "step,t,dt,res_rho,res_rhou,res_rhov,res_E\n" << std::setprecision(17);
    run.tcfg.log_sink = [&](long step, double t, double dt, const std::vector<double>& res) {
        log << step << ',' << t << ',' << dt;
        for (double r : res) log << ',' << r;
        log << '\n';
        std::cout << "step " << step << "  t=" << t << "  dt=" << dt << "  res=[" << format_norms(res)
                  << "]\n";
    };
    artifacts.push_back("log.csv");

    auto L = [&](const SolutionField& U, double t, SolutionField& R) {
        run.op->compute(U, t + run.start_time, R);
    };
    auto den = [&](const SolutionField& U) { return run.op->cfl_denominator(U); };

    std::vector<ForceRecord> forces;
    std::function<void(long, double, const SolutionField&)> per_step;
    const bool track_forces = !run.wall_tag.empty() && run.mesh->tags.size() <= 4;
    if (track_forces && cfg.case_name.rfind("cylinder", 0) == 0) {
        per_step = [&](long step, double t, const SolutionField& U) {
            if (step % cfg.record_every != 0) return;
            const auto c = aero_coefficients(U, run.gas, run.wall_tag, run.freestream, run.ref_length);
            forces.push_back({t + run.start_time, c.cd, c.cl});
        };
    }

    const RunResult rr = advance(*run.U, L, den, run.op->min_volume_weight(), run.tcfg, run.mode,
                                 per_step);
    std::cout << cfg.case_name << ": " << rr.steps << " steps to t=" << rr.t + run.start_time;
    if (run.mode == RunMode::steady)
        std::cout << (rr.steady_reached ? " (steady criterion met)" : " (max_steps reached)");
    std::cout << '\n';

    std::ofstream report(dir / "report.txt");
    report << std::setprecision(10);
    report << "case: " << cfg.case_name << "\nsteps: " << rr.steps << "\nt_end: " << rr.t + run.start_time
           << '\n';
    if (run.mode == RunMode::steady)
        report << "steady_reached: " << (rr.steady_reached ? "yes" : "no") << '\n';
    artifacts.push_back("report.txt");

    if (run.exact) {
        const double T = rr.t;
        const GasModel gas = run.gas;
        const ExactSolution ex = *run.exact;
        const ErrorNorms err =
            error_norms(*run.U, [&](const Vec2& x, double* q) { ex.conserved(x.x, x.y, T, gas, q); });
        std::vector<std::vector<double>> rows;
        for (int v = 0; v < 4; ++v) rows.push_back({double(v), err.l2[v], err.linf[v]});
        export_csv((dir / "errors.csv").string(), {"variable", "l2", "linf"}, rows);
        artifacts.push_back("errors.csv");
        report << "errors (rho, rhou, rhov, E):\n";
        for (int v = 0; v < 4; ++v)
            report << "  L2 " << err.l2[v] << "   Linf " << err.linf[v] << '\n';
    } else if (!cfg.reference.empty()) {
        const StoredField ref = load_field(cfg.reference);
        const ErrorNorms err = reference_field_error(*run.U, ref);
        std::vector<std::vector<double>> rows;
        for (int v = 0; v < 4; ++v) rows.push_back({double(v), err.l2[v], err.linf[v]});
        export_csv((dir / "errors.csv").string(), {"variable", "l2", "linf"}, rows);
        artifacts.push_back("errors.csv");
        report << "errors against reference '" << cfg.reference << "':\n";
        for (int v = 0; v < 4; ++v)
            report << "  L2 " << err.l2[v] << "   Linf " << err.linf[v] << '\n';
    }

    if (!run.wall_tag.empty()) {
        const auto samples = wall_quantities(*run.U, run.gas, run.wall_tag, run.freestream, 20);
        std::vector<std::vector<double>> rows;
        for (const auto& s : samples)
            rows.push_back({s.position.x, s.position.y, s.arc, s.p, s.tau_w, s.cf, s.cp});
        export_csv((dir / "wall.csv").string(), {"x", "y", "arc", "p", "tau_w", "cf", "cp"}, rows);
        artifacts.push_back("wall.csv");
    }
    if (!forces.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& f : forces) rows.push_back({f.t, f.cd, f.cl});
        export_csv((dir / "forces.csv").string(), {"t", "cd", "cl"}, rows);
        artifacts.push_back("forces.csv");
        const auto stats = oscillation_stats(forces);
        report << "cd_mean: " << stats.cd_mean << " +- " << stats.cd_amplitude << '\n';
        report << "cl_mean: " << stats.cl_mean << " +- " << stats.cl_amplitude << '\n';
        try {
            const double st =
                strouhal(forces, run.ref_length, std::hypot(run.freestream.u, run.freestream.v));
            report << "strouhal: " << st << '\n';
        } catch (const SolverError& e) {
            report << "strouhal: n/a (" << e.what() << ")\n";
        }
    }
    if (cfg.case_name == "cylinder-steady") {
        try {
            const auto c = aero_coefficients(*run.U, run.gas, run.wall_tag, run.freestream, 1.0);
            const auto wm = wake_metrics(*run.U, run.gas, run.wall_tag, run.freestream, 1.0);
            report << "cd: " << c.cd << "\ncl: " << c.cl << '\n';
            report << "theta_sep: " << wm.theta_sep << "\nLw_over_D: " << wm.wake_length
                   << "\na_over_D: " << wm.center_a << "\nb_over_D: " << wm.center_b << '\n';
        } catch (const SolverError& e) {
            report << "wake metrics: n/a (" << e.what() << ")\n";
        }
    }
    if (cfg.case_name == "plate") {
        // Exit-plane velocity profile at face centers for the Blasius check.
        std::vector<std::vector<double>> rows;
        for (const auto& e : run.mesh->boundary_edges) {
            if (e.tag < 0 || run.mesh->tags[e.tag].name != "outlet") continue;
            const Vec2 mid = 0.5 * (run.mesh->vertices[e.v0] + run.mesh->vertices[e.v1]);
            double Q[4];
            run.U->eval(e.cell, mid, Q);
            rows.push_back({mid.y, Q[1] / Q[0], Q[2] / Q[0]});
        }
        std::sort(rows.begin(), rows.end());
        export_csv((dir / "profile.csv").string(), {"y", "u", "v"}, rows);
        artifacts.push_back("profile.csv");
    }

    export_vtk(*run.U, run.gas, (dir / "field.vtk").string(), run.ref_length,
               std::max(1e-300, std::hypot(run.freestream.u, run.freestream.v)));
    artifacts.push_back("field.vtk");

    if (!cfg.save_reference.empty()) save_field(*run.U, rr.t + run.start_time, cfg.save_reference);
    if (!cfg.save_field.empty()) save_field(*run.U, rr.t + run.start_time, cfg.save_field);

    write_manifest(cfg, artifacts);
    return 0;
}

StudyResult convergence_study(const RunConfig& cfg, const std::vector<int>& levels,
                              const std::vector<int>& degrees) {
    StudyResult out;
    std::shared_ptr<StoredField> ref;
    if (!cfg.reference.empty()) ref = std::make_shared<StoredField>(load_field(cfg.reference));
    const auto exact = case_exact_solution(cfg);
    if (!exact && !ref)
        throw SolverError("study needs an exact solution (ms1/ms2) or a stored reference");

    for (int k : degrees) {
        for (int level : levels) {
            RunConfig rc = cfg;
            rc.degree = k;
            rc.mesh_level = level;
            rc.mesh_path.clear();
            CaseRun run = build_case(rc);
            auto L = [&](const SolutionField& U, double t, SolutionField& R) {
                run.op->compute(U, t, R);
            };
            auto den = [&](const SolutionField& U) { return run.op->cfl_denominator(U); };
            const RunResult rr =
                advance(*run.U, L, den, run.op->min_volume_weight(), run.tcfg, run.mode);
            StudyEntry entry;
            entry.level = level;
            entry.degree = k;
            entry.h = run.mesh->min_diameter();
            if (exact) {
                const double T = rr.t;
                const GasModel gas = run.gas;
                entry.errors = error_norms(
                    *run.U, [&](const Vec2& x, double* q) { exact->conserved(x.x, x.y, T, gas, q); });
            } else {
                entry.errors = reference_field_error(*run.U, *ref);
            }
            out.entries.push_back(entry);
            std::cout << "study: k=" << k << " level=" << level
                      << " L2=" << format_norms(entry.errors.l2)
                      << " Linf=" << format_norms(entry.errors.linf) << '\n';
        }
    }

    // Aligned table in the style of the error/order tables: per variable,
    // error columns with orders between successive levels.
    const char* vars[4] = {"rho", "rhou", "rhov", "E"};
    std::ostringstream tb;
    tb << std::scientific << std::setprecision(2);
    std::vector<std::vector<double>> csv_rows;
    for (int v = 0; v < 4; ++v) {
        for (const char* norm : {"L2", "Linf"}) {
            tb << norm << " errors and orders for " << vars[v] << ":\n";
            tb << "  k\\level |";
            for (size_t li = 0; li < levels.size(); ++li) {
                tb << "  " << levels[li] << "        ";
                if (li) tb << "order  ";
            }
            tb << '\n';
            for (int k : degrees) {
                tb << "  k=" << k << "     |";
                double prev = 0;
                for (size_t li = 0; li < levels.size(); ++li) {
                    const StudyEntry* e = nullptr;
                    for (const auto& s : out.entries)
                        if (s.degree == k && s.level == levels[li]) e = &s;
                    if (!e) continue;
                    const double err = std::string(norm) == "L2" ? e->errors.l2[v] : e->errors.linf[v];
                    tb << "  " << err;
                    double order = 0;
                    if (li) {
                        const double ratio = std::pow(2.0, levels[li] - levels[li - 1]);
                        order = std::log(prev / err) / std::log(ratio);
                        tb << "  " << std::fixed << std::setprecision(2) << order << std::scientific
                           << std::setprecision(2);
                    }
                    csv_rows.push_back({double(v), std::string(norm) == "L2" ? 0.0 : 1.0, double(k),
                                        double(levels[li]), err, order});
                    prev = err;
                }
                tb << '\n';
            }
            tb << '\n';
        }
    }
    out.table_text = tb.str();

    fs::create_directories(cfg.output_dir);
    export_csv((fs::path(cfg.output_dir) / "study.csv").string(),
               {"variable", "norm_linf", "k", "level", "error", "order"}, csv_rows);
    std::ofstream txt(fs::path(cfg.output_dir) / "study.txt");
    txt << out.table_text;
    std::cout << out.table_text;
    return out;
}

}  // namespace dgns
