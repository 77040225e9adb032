#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dgns/basis.hpp"
#include "dgns/mesh_gen.hpp"

using namespace dgns;

namespace {

double tri_moment(int p, int q) {
    double v = 1.0;
    for (int i = 1; i <= p; ++i) v *= i;
    for (int i = 1; i <= q; ++i) v *= i;
    for (int i = 1; i <= p + q + 2; ++i) v /= i;
    return v;
}

Mesh random_cell_mesh(double ax, double ay, double bx, double by, double cx, double cy) {
    TagTable tags;
    tags["wall"] = {"wall", BcKind::adiabatic_wall, {}};
    std::ostringstream ms;
    ms << "3 1 3\n"
       << ax << ' ' << ay << '\n'
       << bx << ' ' << by << '\n'
       << cx << ' ' << cy << "\n0 1 2\n0 1 wall\n1 2 wall\n2 0 wall\n";
    std::istringstream in(ms.str());
    return read_native_mesh(in, tags, true, true);
}

}  // namespace

TEST_CASE("triangle rules: positivity, normalization, exactness") {
    for (int deg : {1, 2, 3, 4, 5, 7, 8, 9, 11}) {
        const TriangleRule rule = triangle_rule(deg);
        CHECK(rule.degree >= deg);
        double sum = 0;
        for (double w : rule.weights) {
            CHECK(w > 0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
        for (int p = 0; p + 0 <= rule.degree; ++p) {
            for (int q = 0; p + q <= rule.degree; ++q) {
                double got = 0;
                for (int i = 0; i < rule.size(); ++i)
                    got += rule.weights[i] * std::pow(rule.points[i].x, p) *
                           std::pow(rule.points[i].y, q);
                CHECK(got == doctest::Approx(tri_moment(p, q)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("negative-weight degree-3 rule is bypassed") {
    // The classic 4-point degree-3 rule carries weight -27/48; the minimal
    // positive choice at this degree is the 6-point degree-4 rule.
    const TriangleRule rule = triangle_rule(3);
    CHECK(rule.size() == 6);
    for (double w : rule.weights) CHECK(w > 0);
}

TEST_CASE("min quadrature weight") {
    CHECK(min_quadrature_weight(triangle_rule(1)) == doctest::Approx(1.0));
    for (int deg : {3, 5, 7, 9}) CHECK(min_quadrature_weight(triangle_rule(deg)) > 0);
}

TEST_CASE("gauss-legendre edge rules") {
    for (int n = 1; n <= 6; ++n) {
        const EdgeRule rule = gauss_legendre(n);
        double sum = 0;
        for (double w : rule.weights) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double got = 0;
            for (int i = 0; i < n; ++i) got += rule.weights[i] * std::pow(rule.points[i], p);
            CHECK(got == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("basis dimension and constant mode") {
    Mesh mesh = random_cell_mesh(0.1, 0.2, 1.3, 0.4, 0.5, 1.7);
    for (int k : {1, 4}) {
        BasisSet basis(mesh, k);
        CHECK(basis.count() == (k + 1) * (k + 2) / 2);
        std::vector<double> v(basis.count());
        const Vec2 x{0.6, 0.7};
        basis.eval_physical(0, x, v.data(), nullptr, nullptr);
        CHECK(v[0] == doctest::Approx(1.0 / std::sqrt(mesh.cell_area[0])).epsilon(1e-13));
    }
}

TEST_CASE("orthonormality on random cells") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const double ax = U(rng), ay = U(rng);
        Mesh mesh = random_cell_mesh(ax, ay, ax + 1.1 + 0.3 * U(rng), ay + 0.2 * U(rng),
                                     ax + 0.1 * U(rng), ay + 0.9 + 0.3 * U(rng));
        for (int k : {1, 2, 3, 4}) {
            BasisSet basis(mesh, k);
            const int nb = basis.count();
            const auto& rule = basis.volume_rule();
            const CellMap& m = basis.cell_map(0);
            std::vector<double> gram(nb * nb, 0.0);
            for (int q = 0; q < rule.size(); ++q) {
                const double* psi = basis.vol_values(q);
                const double w = rule.weights[q] * m.det_jac * m.scale * m.scale;
                for (int i = 0; i < nb; ++i)
                    for (int j = 0; j < nb; ++j) gram[i * nb + j] += w * psi[i] * psi[j];
            }
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < nb; ++j)
                    CHECK(gram[i * nb + j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("projection reproduces polynomials up to degree k") {
    Mesh mesh = random_cell_mesh(0.0, 0.0, 2.0, 0.1, 0.3, 1.5);
    BasisSet basis(mesh, 3);
    const int nb = basis.count();
    // project f(x, y) = x and evaluate at the centroid
    const auto& rule = basis.volume_rule();
    const CellMap& m = basis.cell_map(0);
    std::vector<double> coef(nb, 0.0), psi(nb);
    auto project = [&](auto f) {
        std::fill(coef.begin(), coef.end(), 0.0);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 x = m.to_physical(rule.points[q]);
            const double w = rule.weights[q] * m.det_jac * m.scale;
            const double* p = basis.vol_values(q);
            for (int j = 0; j < nb; ++j) coef[j] += w * f(x) * p[j];
        }
    };
    auto eval_at = [&](const Vec2& x) {
        basis.eval_physical(0, x, psi.data(), nullptr, nullptr);
        double s = 0;
        for (int j = 0; j < nb; ++j) s += coef[j] * psi[j];
        return s;
    };
    const Vec2 centroid{(0.0 + 2.0 + 0.3) / 3.0, (0.0 + 0.1 + 1.5) / 3.0};
    project([](const Vec2& x) { return x.x; });
    CHECK(eval_at(centroid) == doctest::Approx(centroid.x).epsilon(1e-13));
    // full cubic is reproduced pointwise
    auto cubic = [](const Vec2& x) { return 1.0 + x.x - 2.0 * x.y + 0.5 * x.x * x.y * x.y - x.x * x.x * x.x; };
    project(cubic);
    for (const Vec2 x : {Vec2{0.5, 0.4}, Vec2{1.1, 0.3}, Vec2{0.4, 0.9}})
        CHECK(eval_at(x) == doctest::Approx(cubic(x)).epsilon(1e-12));
}

TEST_CASE("trace evaluation consistency and derivative exactness") {
    Mesh mesh = random_cell_mesh(0.0, 0.0, 1.4, 0.2, 0.4, 1.1);
    BasisSet basis(mesh, 2);
    const int nb = basis.count();
    std::vector<double> v1(nb), g1(2 * nb), h1(3 * nb), v2(nb), g2(2 * nb), h2(3 * nb);

    SUBCASE("trace matches volume evaluation at the same physical point") {
        for (int le = 0; le < 3; ++le) {
            const double t = 0.37;
            basis.eval_trace_physical(0, le, t, v1.data(), g1.data(), h1.data());
            const Vec2 rp = reference_edge_point(le, t);
            basis.eval_physical(0, basis.cell_map(0).to_physical(rp), v2.data(), g2.data(), h2.data());
            for (int j = 0; j < nb; ++j) {
                CHECK(v1[j] == doctest::Approx(v2[j]).epsilon(1e-14));
                CHECK(g1[j * 2] == doctest::Approx(g2[j * 2]).epsilon(1e-13));
            }
        }
    }

    SUBCASE("constant mode has zero gradient; k=1 Hessians vanish") {
        basis.eval_physical(0, {0.5, 0.4}, v1.data(), g1.data(), h1.data());
        CHECK(std::abs(g1[0]) < 1e-14);
        CHECK(std::abs(g1[1]) < 1e-14);
        BasisSet lin(mesh, 1);
        std::vector<double> lv(3), lg(6), lh(9);
        lin.eval_physical(0, {0.5, 0.4}, lv.data(), lg.data(), lh.data());
        for (double h : lh) CHECK(std::abs(h) < 1e-14);
    }

    SUBCASE("finite differences confirm tabulated gradients and Hessians") {
        const Vec2 x{0.6, 0.45};
        const double d = 1e-6;
        basis.eval_physical(0, x, v1.data(), g1.data(), h1.data());
        std::vector<double> vx1(nb), vx2(nb), gy1(2 * nb), gy2(2 * nb);
        basis.eval_physical(0, {x.x + d, x.y}, vx2.data(), gy2.data(), nullptr);
        basis.eval_physical(0, {x.x - d, x.y}, vx1.data(), gy1.data(), nullptr);
        for (int j = 1; j < nb; ++j) {
            const double fd = (vx2[j] - vx1[j]) / (2 * d);
            CHECK(fd == doctest::Approx(g1[2 * j]).epsilon(1e-5));
            const double fdh = (gy2[2 * j] - gy1[2 * j]) / (2 * d);
            if (std::abs(h1[3 * j]) > 1e-10)
                CHECK(fdh == doctest::Approx(h1[3 * j]).epsilon(1e-4));
        }
    }
}

TEST_CASE("hessian symmetry via mixed partials") {
    // d2/dxdy from x-derivative of y-gradient equals the tabulated xy entry
    Mesh mesh = random_cell_mesh(0.0, 0.0, 1.2, 0.1, 0.2, 1.3);
    BasisSet basis(mesh, 3);
    const int nb = basis.count();
    std::vector<double> v(nb), g(2 * nb), h(3 * nb);
    const double d = 1e-6;
    std::vector<double> gp(2 * nb), gm(2 * nb);
    basis.eval_physical(0, {0.5, 0.5}, v.data(), g.data(), h.data());
    basis.eval_physical(0, {0.5 + d, 0.5}, v.data(), gp.data(), nullptr);
    basis.eval_physical(0, {0.5 - d, 0.5}, v.data(), gm.data(), nullptr);
    for (int j = 3; j < nb; ++j) {
        const double fd_xy = (gp[2 * j + 1] - gm[2 * j + 1]) / (2 * d);
        if (std::abs(h[3 * j + 1]) > 1e-8)
            CHECK(fd_xy == doctest::Approx(h[3 * j + 1]).epsilon(1e-4));
    }
}
