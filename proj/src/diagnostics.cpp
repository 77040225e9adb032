#include "dgns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>

#include "dgns/quadrature.hpp"

namespace dgns {

ErrorNorms error_norms(const SolutionField& field,
                       const std::function<void(const Vec2&, double*)>& exact, double nudge) {
    const auto& basis = field.basis();
    const auto& mesh = field.mesh();
    const int nv = field.nvars();
    const TriangleRule rule = triangle_rule(basis.degree() + 1);
    const int nb = basis.count();

    // Tabulate the reference basis at the error rule and the 19x19 lattice.
    std::vector<double> rv(rule.size() * nb);
    for (int q = 0; q < rule.size(); ++q) basis.reference().eval(rule.points[q], &rv[q * nb]);
    constexpr int kLat = 19;
    std::vector<Vec2> lattice;
    lattice.reserve(kLat * kLat);
    for (int i = 0; i < kLat; ++i) {
        for (int j = 0; j < kLat; ++j) {
            const double a = i / double(kLat - 1), b = j / double(kLat - 1);
            lattice.push_back({a * (1.0 - b), b});
        }
    }
    std::vector<double> lv(lattice.size() * nb);
    for (size_t q = 0; q < lattice.size(); ++q)
        basis.reference().eval(lattice[q], &lv[q * nb]);

    ErrorNorms out;
    out.l2.assign(nv, 0.0);
    out.linf.assign(nv, 0.0);
    std::vector<double> ex(nv);
    const Vec2 centroid_ref{1.0 / 3.0, 1.0 / 3.0};
    auto eval_point = [&](const CellMap& m, const Vec2& rp) {
        const Vec2 r{rp.x + nudge * (centroid_ref.x - rp.x), rp.y + nudge * (centroid_ref.y - rp.y)};
        return m.to_physical(r);
    };
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const CellMap& m = basis.cell_map(c);
        const double* cc = field.cell(c);
        for (int q = 0; q < rule.size(); ++q) {
            exact(eval_point(m, rule.points[q]), ex.data());
            const double w = rule.weights[q] * m.det_jac;
            for (int v = 0; v < nv; ++v) {
                double s = 0;
                const double* cv = cc + v * nb;
                for (int j = 0; j < nb; ++j) s += cv[j] * rv[q * nb + j];
                const double d = s * m.scale - ex[v];
                out.l2[v] += w * d * d;
            }
        }
        for (size_t q = 0; q < lattice.size(); ++q) {
            exact(eval_point(m, lattice[q]), ex.data());
            for (int v = 0; v < nv; ++v) {
                double s = 0;
                const double* cv = cc + v * nb;
                for (int j = 0; j < nb; ++j) s += cv[j] * lv[q * nb + j];
                out.linf[v] = std::max(out.linf[v], std::abs(s * m.scale - ex[v]));
            }
        }
    }
    for (int v = 0; v < nv; ++v) out.l2[v] = std::sqrt(out.l2[v]);
    return out;
}

double convergence_order(double e_coarse, double e_fine) {
    if (!(e_coarse > 0) || !(e_fine > 0)) throw SolverError("convergence_order needs positive errors");
    return std::log2(e_coarse / e_fine);
}

double convergence_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
    if (!(e_coarse > 0) || !(e_fine > 0)) throw SolverError("convergence_order needs positive errors");
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

FieldSampler::FieldSampler(const SolutionField& field) : field_(&field) {
    const auto& mesh = field.mesh();
    const auto bb = mesh.bounding_box();
    lo_ = bb[0];
    hi_ = bb[1];
    const int n = std::max(1, static_cast<int>(std::sqrt(double(mesh.n_cells()))));
    nx_ = ny_ = n;
    bins_.assign(static_cast<size_t>(nx_) * ny_, {});
    auto clampi = [](int v, int hi) { return std::min(std::max(v, 0), hi); };
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto xy = mesh.cell_coords(c);
        Vec2 clo = xy[0], chi = xy[0];
        for (int i = 1; i < 3; ++i) {
            clo.x = std::min(clo.x, xy[i].x);
            clo.y = std::min(clo.y, xy[i].y);
            chi.x = std::max(chi.x, xy[i].x);
            chi.y = std::max(chi.y, xy[i].y);
        }
        const int i0 = clampi(int((clo.x - lo_.x) / (hi_.x - lo_.x) * nx_), nx_ - 1);
        const int i1 = clampi(int((chi.x - lo_.x) / (hi_.x - lo_.x) * nx_), nx_ - 1);
        const int j0 = clampi(int((clo.y - lo_.y) / (hi_.y - lo_.y) * ny_), ny_ - 1);
        const int j1 = clampi(int((chi.y - lo_.y) / (hi_.y - lo_.y) * ny_), ny_ - 1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) bins_[j * nx_ + i].push_back(c);
    }
}

int FieldSampler::locate(const Vec2& x) const {
    const auto& mesh = field_->mesh();
    auto clampi = [](int v, int hi) { return std::min(std::max(v, 0), hi); };
    const int i = clampi(int((x.x - lo_.x) / (hi_.x - lo_.x) * nx_), nx_ - 1);
    const int j = clampi(int((x.y - lo_.y) / (hi_.y - lo_.y) * ny_), ny_ - 1);
    int best = -1;
    double best_viol = 1e-9;
    for (int c : bins_[j * nx_ + i]) {
        const auto xy = mesh.cell_coords(c);
        const double det = (xy[1].x - xy[0].x) * (xy[2].y - xy[0].y) -
                           (xy[2].x - xy[0].x) * (xy[1].y - xy[0].y);
        const double l1 = ((x.x - xy[0].x) * (xy[2].y - xy[0].y) -
                           (xy[2].x - xy[0].x) * (x.y - xy[0].y)) / det;
        const double l2 = ((xy[1].x - xy[0].x) * (x.y - xy[0].y) -
                           (x.x - xy[0].x) * (xy[1].y - xy[0].y)) / det;
        const double viol = std::max({-l1, -l2, l1 + l2 - 1.0});
        if (viol < best_viol) {
            best_viol = viol;
            best = c;
            if (viol <= 0) break;
        }
    }
    return best;
}

void FieldSampler::sample(const Vec2& x, double* values) const {
    const int c = locate(x);
    if (c < 0)
        throw SolverError("sample point (" + std::to_string(x.x) + "," + std::to_string(x.y) +
                          ") is outside the mesh");
    field_->eval(c, x, values);
}

void FieldSampler::sample(const Vec2& x, double* values, double* grads) const {
    const int c = locate(x);
    if (c < 0)
        throw SolverError("sample point (" + std::to_string(x.x) + "," + std::to_string(x.y) +
                          ") is outside the mesh");
    field_->eval(c, x, values, grads);
}

namespace {

int tag_index(const Mesh& mesh, const std::string& name) {
    for (size_t i = 0; i < mesh.tags.size(); ++i)
        if (mesh.tags[i].name == name) return static_cast<int>(i);
    throw SolverError("no boundary tag named '" + name + "'");
}

struct WallPoint {
    Vec2 x, n;
    double p, tau_w;
};

WallPoint wall_point(const SolutionField& field, const GasModel& gas, const BoundaryEdge& e,
                     double t) {
    const auto& mesh = field.mesh();
    const Vec2 a = mesh.vertices[e.v0], b = mesh.vertices[e.v1];
    const Vec2 x = a + t * (b - a);
    double Q[4], gQ[8];
    field.eval(e.cell, x, Q, gQ);
    const Primitives s = primitives(Q, gas);
    double fv[4], gv[4];
    const double g2[4][2] = {{gQ[0], gQ[1]}, {gQ[2], gQ[3]}, {gQ[4], gQ[5]}, {gQ[6], gQ[7]}};
    viscous_flux(s, g2, gas, fv, gv);
    // tau . n from the momentum rows of the viscous flux, projected onto the
    // wall tangent (counterclockwise tangent, normal pointing out of the fluid).
    const Vec2 tn{fv[1] * e.normal.x + gv[1] * e.normal.y, fv[2] * e.normal.x + gv[2] * e.normal.y};
    const Vec2 tangent{-e.normal.y, e.normal.x};
    return {x, e.normal, s.p, tn.dot(tangent)};
}

}  // namespace

std::vector<WallSample> wall_quantities(const SolutionField& field, const GasModel& gas,
                                        const std::string& wall_tag, const FreestreamState& fs,
                                        int per_edge) {
    const auto& mesh = field.mesh();
    const int tag = tag_index(mesh, wall_tag);
    const double qinf = 0.5 * fs.rho * (fs.u * fs.u + fs.v * fs.v);
    std::vector<WallSample> out;
    double arc = 0;
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != tag) continue;
        for (int i = 0; i < per_edge; ++i) {
            const double t = (i + 0.5) / per_edge;
            const WallPoint wp = wall_point(field, gas, e, t);
            WallSample s;
            s.position = wp.x;
            s.normal = wp.n;
            s.arc = arc + t * e.length;
            s.p = wp.p;
            s.tau_w = wp.tau_w;
            s.cf = qinf > 0 ? wp.tau_w / qinf : 0.0;
            s.cp = qinf > 0 ? (wp.p - fs.p) / qinf : 0.0;
            out.push_back(s);
        }
        arc += e.length;
    }
    if (out.empty()) throw SolverError("tag '" + wall_tag + "' has no boundary edges");
    return out;
}

AeroCoefficients aero_coefficients(const SolutionField& field, const GasModel& gas,
                                   const std::string& wall_tag, const FreestreamState& fs,
                                   double ref_length) {
    const auto& mesh = field.mesh();
    const int tag = tag_index(mesh, wall_tag);
    const EdgeRule rule = gauss_legendre(field.basis().degree() + 1);
    Vec2 force{0, 0}, closure{0, 0};
    bool any = false;
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != tag) continue;
        any = true;
        closure += (mesh.vertices[e.v1] - mesh.vertices[e.v0]);
        for (int q = 0; q < rule.size(); ++q) {
            const WallPoint wp = wall_point(field, gas, e, rule.points[q]);
            const double w = rule.weights[q] * e.length;
            double Q[4], gQ[8];
            field.eval(e.cell, wp.x, Q, gQ);
            const Primitives s = primitives(Q, gas);
            double fv[4], gv[4];
            const double g2[4][2] = {{gQ[0], gQ[1]}, {gQ[2], gQ[3]}, {gQ[4], gQ[5]}, {gQ[6], gQ[7]}};
            viscous_flux(s, g2, gas, fv, gv);
            // Force on the body: pressure along the body-inward normal plus
            // the viscous traction. e.normal points out of the fluid.
            force.x += w * (wp.p * wp.n.x - (fv[1] * wp.n.x + gv[1] * wp.n.y));
            force.y += w * (wp.p * wp.n.y - (fv[2] * wp.n.x + gv[2] * wp.n.y));
        }
    }
    if (!any) throw SolverError("tag '" + wall_tag + "' has no boundary edges");
    double total_len = 0;
    for (const auto& e : mesh.boundary_edges)
        if (e.tag == tag) total_len += e.length;
    if (closure.norm() > 1e-10 * total_len)
        throw SolverError("wall contour '" + wall_tag + "' is not closed");
    const double uinf2 = fs.u * fs.u + fs.v * fs.v;
    const double denom = 0.5 * fs.rho * uinf2 * ref_length;
    return {force.x / denom, force.y / denom};
}

WakeMetrics wake_metrics(const SolutionField& field, const GasModel& gas,
                         const std::string& wall_tag, const FreestreamState& fs, double diameter) {
    WakeMetrics out;
    const double R = 0.5 * diameter;

    // Separation angle: sign change of the wall shear on the upper half,
    // measured from the front stagnation point.
    auto samples = wall_quantities(field, gas, wall_tag, fs, 20);
    struct AngSample {
        double ang;  // degrees from front stagnation
        double tau;
    };
    std::vector<AngSample> upper;
    for (const auto& s : samples) {
        if (s.position.y <= 1e-12) continue;
        const double polar = std::atan2(s.position.y, s.position.x) * 180.0 / M_PI;
        upper.push_back({180.0 - polar, s.tau_w});
    }
    std::sort(upper.begin(), upper.end(), [](auto& a, auto& b) { return a.ang < b.ang; });
    bool found = false;
    for (size_t i = 1; i < upper.size(); ++i) {
        if (upper[i - 1].tau != 0 && upper[i].tau != 0 && (upper[i - 1].tau > 0) != (upper[i].tau > 0)) {
            // Linear interpolation of the sign change; samples are dense
            // enough that refinement below sample spacing is quadrature noise.
            const double t = upper[i - 1].tau / (upper[i - 1].tau - upper[i].tau);
            out.theta_sep = upper[i - 1].ang + t * (upper[i].ang - upper[i - 1].ang);
            found = true;
            break;
        }
    }
    if (!found) throw SolverError("no separation point: wall shear does not change sign (attached flow)");

    // Wake length: downstream extent of reversed u on the centerline.
    FieldSampler sampler(field);
    auto u_at = [&](double x, double y) {
        double Q[4];
        sampler.sample({x, y}, Q);
        return Q[1] / Q[0];
    };
    const double eps = 1e-3 * diameter;
    double x0 = R + 5e-3 * diameter, x1 = x0;
    const double xmax = 8.0 * diameter;
    double prev = u_at(x0, eps);
    bool closed = false;
    for (double x = x0; x < xmax; x += 0.02 * diameter) {
        const double u = u_at(x, eps);
        if (prev < 0 && u >= 0) {
            // bisection refine
            double a = x - 0.02 * diameter, b = x;
            for (int it = 0; it < 60; ++it) {
                const double mM = 0.5 * (a + b);
                (u_at(mM, eps) < 0 ? a : b) = mM;
            }
            x1 = 0.5 * (a + b);
            closed = true;
            break;
        }
        prev = u;
    }
    if (!closed) throw SolverError("wake does not close on the centerline within 8 diameters");
    out.wake_length = (x1 - R) / diameter;

    // Recirculation center in the upper bubble: velocity magnitude minimum.
    double best = 1e300;
    Vec2 center{R, 0.1};
    for (double x = R + 0.02 * diameter; x < x1; x += 0.02 * diameter) {
        for (double y = 0.04 * diameter; y < 1.2 * diameter; y += 0.02 * diameter) {
            double Q[4];
            const int c = sampler.locate({x, y});
            if (c < 0) continue;
            field.eval(c, {x, y}, Q);
            const double speed2 = (Q[1] * Q[1] + Q[2] * Q[2]) / (Q[0] * Q[0]);
            if (speed2 < best) {
                best = speed2;
                center = {x, y};
            }
        }
    }
    out.center_a = (center.x - R) / diameter;
    out.center_b = 2.0 * center.y / diameter;
    return out;
}

double strouhal(const std::vector<ForceRecord>& history, double diameter, double velocity) {
    if (history.size() < 16) throw SolverError("strouhal: too few samples");
    const size_t start = history.size() / 2;
    double mean = 0;
    for (size_t i = start; i < history.size(); ++i) mean += history[i].cl;
    mean /= double(history.size() - start);

    std::vector<double> crossings;
    for (size_t i = start + 1; i < history.size(); ++i) {
        const double a = history[i - 1].cl - mean, b = history[i].cl - mean;
        if (a == 0.0) continue;
        if ((a > 0) != (b > 0)) {
            const double t = history[i - 1].t +
                             (history[i].t - history[i - 1].t) * a / (a - b);
            crossings.push_back(t);
        }
    }
    if (crossings.size() < 11)
        throw SolverError("strouhal: fewer than five full oscillation periods after transient removal");
    // Same-parity crossings are exactly one period apart even when the mean
    // estimate is slightly off (alternating half-period spacings then differ).
    size_t last = crossings.size() - 1;
    if (last % 2 != 0) --last;
    const double period = (crossings[last] - crossings[0]) / double(last / 2);
    return diameter / (velocity * period);
}

OscillationStats oscillation_stats(const std::vector<ForceRecord>& history) {
    OscillationStats out;
    if (history.empty()) return out;
    const size_t start = history.size() / 2;
    double cdmin = 1e300, cdmax = -1e300, clmin = 1e300, clmax = -1e300;
    for (size_t i = start; i < history.size(); ++i) {
        out.cd_mean += history[i].cd;
        out.cl_mean += history[i].cl;
        cdmin = std::min(cdmin, history[i].cd);
        cdmax = std::max(cdmax, history[i].cd);
        clmin = std::min(clmin, history[i].cl);
        clmax = std::max(clmax, history[i].cl);
    }
    out.cd_mean /= double(history.size() - start);
    out.cl_mean /= double(history.size() - start);
    out.cd_amplitude = 0.5 * (cdmax - cdmin);
    out.cl_amplitude = 0.5 * (clmax - clmin);
    return out;
}

void export_vtk(const SolutionField& field, const GasModel& gas, const std::string& path,
                double ref_length, double ref_velocity) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open '" + path + "' for writing");
    const auto& mesh = field.mesh();
    const auto& basis = field.basis();
    const int k = std::max(1, basis.degree());

    // Barycentric lattice of resolution k+1 per cell; duplicated points keep
    // the discontinuous representation.
    const int n = k + 1;
    std::vector<Vec2> ref_pts;
    std::vector<std::array<int, 3>> sub_tris;
    auto node_id = [&](int i, int j) {
        // lattice row j (s = j/n) holds n+1-j points
        int id = 0;
        for (int r = 0; r < j; ++r) id += n + 1 - r;
        return id + i;
    };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n - j; ++i) ref_pts.push_back({double(i) / n, double(j) / n});
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n - j; ++i) {
            sub_tris.push_back({node_id(i, j), node_id(i + 1, j), node_id(i, j + 1)});
            if (i + j < n - 1)
                sub_tris.push_back({node_id(i + 1, j), node_id(i + 1, j + 1), node_id(i, j + 1)});
        }
    }

    const int ppc = static_cast<int>(ref_pts.size());
    const long npts = static_cast<long>(ppc) * mesh.n_cells();
    out << "# vtk DataFile Version 2.0\ndgns field export\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << npts << " double\n";
    out << std::setprecision(12);
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const CellMap& m = basis.cell_map(c);
        for (const auto& rp : ref_pts) {
            const Vec2 x = m.to_physical(rp);
            out << x.x << ' ' << x.y << " 0\n";
        }
    }
    const long ntri = static_cast<long>(sub_tris.size()) * mesh.n_cells();
    out << "CELLS " << ntri << ' ' << 4 * ntri << '\n';
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const long base = static_cast<long>(c) * ppc;
        for (const auto& tri : sub_tris)
            out << "3 " << base + tri[0] << ' ' << base + tri[1] << ' ' << base + tri[2] << '\n';
    }
    out << "CELL_TYPES " << ntri << '\n';
    for (long i = 0; i < ntri; ++i) out << "5\n";

    const char* names[6] = {"rho", "u", "v", "p", "mach", "vorticity"};
    std::vector<std::vector<double>> data(6, std::vector<double>(npts));
    long idx = 0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const CellMap& m = basis.cell_map(c);
        for (const auto& rp : ref_pts) {
            double Q[4], gQ[8];
            field.eval(c, m.to_physical(rp), Q, gQ);
            const Primitives s = primitives(Q, gas);
            Vec2 du, dv, de;
            const double g2[4][2] = {{gQ[0], gQ[1]}, {gQ[2], gQ[3]}, {gQ[4], gQ[5]}, {gQ[6], gQ[7]}};
            primitive_gradients(s, g2, du, dv, de);
            data[0][idx] = s.rho;
            data[1][idx] = s.u;
            data[2][idx] = s.v;
            data[3][idx] = s.p;
            data[4][idx] = std::hypot(s.u, s.v) / s.a;
            data[5][idx] = (dv.x - du.y) * ref_length / ref_velocity;
            ++idx;
        }
    }
    out << "POINT_DATA " << npts << '\n';
    for (int f = 0; f < 6; ++f) {
        out << "SCALARS " << names[f] << " double 1\nLOOKUP_TABLE default\n";
        for (long i = 0; i < npts; ++i) out << data[f][i] << '\n';
    }
    if (!out) throw SolverError("write failure on '" + path + "'");
}

void export_csv(const std::string& path, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open '" + path + "' for writing");
    for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    out << std::setprecision(17);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    if (!out) throw SolverError("write failure on '" + path + "'");
}

}  // namespace dgns
