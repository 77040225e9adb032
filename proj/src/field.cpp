#include "dgns/field.hpp"

#include <cmath>
#include <cstring>

namespace dgns {

SolutionField::SolutionField(const BasisSet& basis, int nvars)
    : basis_(&basis),
      nvars_(nvars),
      nb_(basis.count()),
      n_cells_(basis.mesh().n_cells()),
      coef_(static_cast<size_t>(basis.mesh().n_cells()) * nvars * basis.count(), 0.0) {}

void SolutionField::set_zero() { std::memset(coef_.data(), 0, coef_.size() * sizeof(double)); }

void SolutionField::project(const std::function<void(const Vec2&, double*)>& f) {
    const auto& rule = basis_->volume_rule();
    std::vector<double> vals(nvars_);
    set_zero();
    for (int c = 0; c < n_cells_; ++c) {
        const CellMap& m = basis_->cell_map(c);
        double* cc = cell(c);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 x = m.to_physical(rule.points[q]);
            f(x, vals.data());
            const double wdet = rule.weights[q] * m.det_jac;
            const double* psi = basis_->vol_values(q);
            for (int v = 0; v < nvars_; ++v) {
                const double fw = vals[v] * wdet * m.scale;
                double* cv = cc + v * nb_;
                for (int j = 0; j < nb_; ++j) cv[j] += fw * psi[j];
            }
        }
    }
}

void SolutionField::eval(int c, const Vec2& x, double* values) const {
    std::vector<double> psi(nb_);
    const CellMap& m = basis_->cell_map(c);
    basis_->reference().eval(m.to_reference(x), psi.data());
    const double* cc = cell(c);
    for (int v = 0; v < nvars_; ++v) {
        double s = 0;
        const double* cv = cc + v * nb_;
        for (int j = 0; j < nb_; ++j) s += cv[j] * psi[j];
        values[v] = s * m.scale;
    }
}

void SolutionField::eval(int c, const Vec2& x, double* values, double* grads) const {
    std::vector<double> psi(nb_), dpsi(2 * nb_), h(3 * nb_);
    const CellMap& m = basis_->cell_map(c);
    basis_->reference().eval_all(m.to_reference(x), psi.data(), dpsi.data(), h.data());
    const double* cc = cell(c);
    for (int v = 0; v < nvars_; ++v) {
        double s = 0, gr = 0, gs = 0;
        const double* cv = cc + v * nb_;
        for (int j = 0; j < nb_; ++j) {
            s += cv[j] * psi[j];
            gr += cv[j] * dpsi[2 * j];
            gs += cv[j] * dpsi[2 * j + 1];
        }
        values[v] = s * m.scale;
        const Vec2 g = m.inv_jac.apply_transpose({gr, gs});
        grads[2 * v] = g.x * m.scale;
        grads[2 * v + 1] = g.y * m.scale;
    }
}

double SolutionField::cell_average(int c, int var) const {
    // phi_1 = 1/sqrt(area), so the average is c_1 / sqrt(area).
    const double area = mesh().cell_area[c];
    return cell(c)[var * nb_] / std::sqrt(area);
}

double SolutionField::domain_integral(int var) const {
    double s = 0;
    for (int c = 0; c < n_cells_; ++c) s += cell(c)[var * nb_] * std::sqrt(mesh().cell_area[c]);
    return s;
}

std::vector<double> SolutionField::coefficient_norms() const {
    std::vector<double> out(nvars_, 0.0);
    for (int c = 0; c < n_cells_; ++c) {
        const double* cc = cell(c);
        for (int v = 0; v < nvars_; ++v) {
            const double* cv = cc + v * nb_;
            for (int j = 0; j < nb_; ++j) out[v] += cv[j] * cv[j];
        }
    }
    for (double& x : out) x = std::sqrt(x);
    return out;
}

bool SolutionField::all_finite() const {
    for (double x : coef_)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace dgns
