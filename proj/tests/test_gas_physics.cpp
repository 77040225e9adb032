#include <doctest.h>

#include <cmath>
#include <random>

#include "dgns/gas.hpp"

using namespace dgns;

namespace {

GasModel air() {
    GasModel g;
    g.mu_constant = 1.0;
    return g;
}

struct RandomState {
    double Q[4];
    double gQ[4][2];
};

RandomState random_admissible(std::mt19937& rng) {
    std::uniform_real_distribution<double> rho(0.3, 3.0), vel(-2.0, 2.0), en(0.5, 5.0),
        grad(-1.0, 1.0);
    RandomState s;
    const double r = rho(rng), u = vel(rng), v = vel(rng), e = en(rng);
    s.Q[0] = r;
    s.Q[1] = r * u;
    s.Q[2] = r * v;
    s.Q[3] = r * e + 0.5 * r * (u * u + v * v);
    for (int m = 0; m < 4; ++m)
        for (int d = 0; d < 2; ++d) s.gQ[m][d] = grad(rng);
    return s;
}

}  // namespace

TEST_CASE("primitives: direct substitution and failure modes") {
    GasModel gas = air();
    const double Q[4] = {1, 0, 0, 1};
    const Primitives s = primitives(Q, gas);
    CHECK(s.e == doctest::Approx(1.0));
    CHECK(s.p == doctest::Approx(0.4));
    CHECK(s.a == doctest::Approx(std::sqrt(0.56)).epsilon(1e-12));

    const double bad_e[4] = {1, 1, 0, 0.5};  // e = 0
    CHECK_THROWS_AS(primitives(bad_e, gas), InvalidStateError);
    const double bad_rho[4] = {-1, 0, 0, 1};
    CHECK_THROWS_AS(primitives(bad_rho, gas), InvalidStateError);
    CHECK_FALSE(admissible(bad_e));
}

TEST_CASE("sutherland viscosity reproduces mu_ref at T_ref") {
    GasModel g;
    g.law = GasModel::ViscosityLaw::sutherland;
    g.mu_ref = 1.7e-5;
    g.T_ref = 273.15;
    g.C_s = 110.4;
    CHECK(g.viscosity(g.T_ref) == doctest::Approx(g.mu_ref).epsilon(1e-15));
    CHECK(g.viscosity(350.0) > 0);
    // derivative check against finite differences
    const double d = 1e-3;
    const double fd = (g.viscosity(300 + d) - g.viscosity(300 - d)) / (2 * d);
    CHECK(g.viscosity_dT(300) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("convective flux") {
    GasModel gas = air();
    SUBCASE("stagnant gas carries pressure only") {
        const double Q[4] = {1, 0, 0, 2.5};
        double fc[4], gc[4];
        convective_flux(primitives(Q, gas), fc, gc);
        CHECK(fc[0] == doctest::Approx(0.0));
        CHECK(fc[1] == doctest::Approx(1.0));
        CHECK(fc[2] == doctest::Approx(0.0));
        CHECK(fc[3] == doctest::Approx(0.0));
        CHECK(gc[1] == doctest::Approx(0.0));
        CHECK(gc[2] == doctest::Approx(1.0));
    }
    SUBCASE("hand-evaluated moving state") {
        const double Q[4] = {1, 1, 0, 3.0};  // u=1, e=2.5, p=1
        double fc[4], gc[4];
        convective_flux(primitives(Q, gas), fc, gc);
        CHECK(fc[0] == doctest::Approx(1.0));
        CHECK(fc[1] == doctest::Approx(2.0));
        CHECK(fc[2] == doctest::Approx(0.0));
        CHECK(fc[3] == doctest::Approx(4.0));
    }
    SUBCASE("90-degree rotation swaps the flux roles") {
        std::mt19937 rng(7);
        for (int i = 0; i < 20; ++i) {
            RandomState s = random_admissible(rng);
            double fc[4], gc[4];
            convective_flux(primitives(s.Q, gas), fc, gc);
            const double Qr[4] = {s.Q[0], -s.Q[2], s.Q[1], s.Q[3]};  // (u,v) -> (-v,u)
            double fr[4], gr[4];
            convective_flux(primitives(Qr, gas), fr, gr);
            CHECK(gr[0] == doctest::Approx(fc[0]).epsilon(1e-12));
            CHECK(gr[1] == doctest::Approx(-fc[2]).epsilon(1e-12));
            CHECK(gr[2] == doctest::Approx(fc[1]).epsilon(1e-12));
            CHECK(gr[3] == doctest::Approx(fc[3]).epsilon(1e-12));
        }
    }
}

TEST_CASE("viscous flux") {
    GasModel gas = air();
    SUBCASE("zero gradients give zero flux") {
        const double Q[4] = {1.2, 0.5, -0.2, 3.0};
        const double gQ[4][2] = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
        double fv[4], gv[4];
        viscous_flux(primitives(Q, gas), gQ, gas, fv, gv);
        for (int m = 0; m < 4; ++m) {
            CHECK(fv[m] == doctest::Approx(0.0));
            CHECK(gv[m] == doctest::Approx(0.0));
        }
    }
    SUBCASE("hand chain-rule evaluation") {
        // rho=1, u=1, v=0, mu=1, grad rho=0, grad(rho u)=(1,0), grad(rho v)=0,
        // grad E chosen so grad e = 0: de = (dE - (E/rho) drho)/rho - u du = dE - du
        const double Q[4] = {1, 1, 0, 3.0};
        const double gQ[4][2] = {{0, 0}, {1, 0}, {0, 0}, {1, 0}};
        double fv[4], gv[4];
        viscous_flux(primitives(Q, gas), gQ, gas, fv, gv);
        CHECK(fv[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));   // tau11
        CHECK(fv[2] == doctest::Approx(0.0));                        // tau12
        CHECK(gv[2] == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));  // tau22
    }
    SUBCASE("stress symmetry tau12 = tau21") {
        std::mt19937 rng(11);
        for (int i = 0; i < 50; ++i) {
            RandomState s = random_admissible(rng);
            double fv[4], gv[4];
            viscous_flux(primitives(s.Q, gas), s.gQ, gas, fv, gv);
            CHECK(fv[2] == doctest::Approx(gv[1]).epsilon(1e-13));
        }
    }
}

TEST_CASE("diffusion matrices: pinned entries") {
    GasModel gas = air();
    const double Q[4] = {1, 1, 0, 3.0};  // mu/rho = 1
    const Primitives s = primitives(Q, gas);
    SUBCASE("A22") {
        const Mat2 A = diffusion_matrix(2, 2, s, gas);
        CHECK(A(0, 0) == doctest::Approx(4.0 / 3.0));
        CHECK(A(0, 1) == doctest::Approx(0.0));
        CHECK(A(1, 0) == doctest::Approx(0.0));
        CHECK(A(1, 1) == doctest::Approx(1.0));
    }
    SUBCASE("A44 is an identity multiple") {
        const Mat2 A = diffusion_matrix(4, 4, s, gas);
        const double want = s.mu * gas.gamma / (s.rho * gas.prandtl);
        CHECK(A(0, 0) == doctest::Approx(want));
        CHECK(A(1, 1) == doctest::Approx(want));
        CHECK(A(0, 1) == doctest::Approx(0.0));
    }
    SUBCASE("continuity row vanishes") {
        for (int m = 1; m <= 4; ++m) {
            const Mat2 A = diffusion_matrix(1, m, s, gas);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) CHECK(A(i, j) == 0.0);
        }
    }
    SUBCASE("momentum rows do not see the energy variable") {
        for (int l : {2, 3}) {
            const Mat2 A = diffusion_matrix(l, 4, s, gas);
            for (int i = 0; i < 4; ++i) CHECK(A.a[i] == 0.0);
        }
    }
    SUBCASE("index range") {
        CHECK_THROWS_AS(diffusion_matrix(0, 1, s, gas), SolverError);
        CHECK_THROWS_AS(diffusion_matrix(2, 5, s, gas), SolverError);
    }
}

TEST_CASE("direction vectors") {
    GasModel gas = air();
    const double Q[4] = {1, 1, 0, 3.0};  // mu/rho = 1
    const Primitives s = primitives(Q, gas);
    SUBCASE("axis-aligned transpose products") {
        const Vec2 xi22 = direction_vector(2, 2, s, {1, 0}, gas);
        CHECK(xi22.x == doctest::Approx(4.0 / 3.0));
        CHECK(xi22.y == doctest::Approx(0.0));
        const Vec2 xi23 = direction_vector(2, 3, s, {1, 0}, gas);
        CHECK(xi23.x == doctest::Approx(0.0));
        CHECK(xi23.y == doctest::Approx(-2.0 / 3.0));
        const Vec2 xi1 = direction_vector(1, 2, s, {1, 0}, gas);
        CHECK(xi1.x == 0.0);
        CHECK(xi1.y == 0.0);
    }
    SUBCASE("fused table matches the per-index definition") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 25; ++trial) {
            RandomState st = random_admissible(rng);
            const Primitives sp = primitives(st.Q, gas);
            const double ang = trial * 0.2;
            const Vec2 n{std::cos(ang), std::sin(ang)};
            Vec2 xi[4][4];
            direction_vectors(sp, n, gas, xi);
            for (int l = 1; l <= 4; ++l) {
                for (int m = 1; m <= 4; ++m) {
                    const Vec2 want = direction_vector(l, m, sp, n, gas);
                    CHECK(xi[l - 1][m - 1].x == doctest::Approx(want.x).epsilon(1e-14));
                    CHECK(xi[l - 1][m - 1].y == doctest::Approx(want.y).epsilon(1e-14));
                }
            }
        }
    }
}

TEST_CASE("decomposition identity: sum_m A^(lm) grad Q^m equals the viscous flux rows") {
    // Both viscosity laws; the identity is pointwise algebraic.
    for (bool sutherland : {false, true}) {
        GasModel gas = air();
        if (sutherland) {
            gas.law = GasModel::ViscosityLaw::sutherland;
            gas.mu_ref = 2.3;
            gas.T_ref = 1.1;
            gas.C_s = 0.7;
        }
        std::mt19937 rng(sutherland ? 99 : 42);
        for (int trial = 0; trial < 1000; ++trial) {
            RandomState st = random_admissible(rng);
            const Primitives s = primitives(st.Q, gas);
            double fv[4], gv[4];
            viscous_flux(s, st.gQ, gas, fv, gv);
            for (int l = 2; l <= 4; ++l) {
                Vec2 sum{0, 0};
                for (int m = 1; m <= 4; ++m) {
                    const Mat2 A = diffusion_matrix(l, m, s, gas);
                    sum += A.apply({st.gQ[m - 1][0], st.gQ[m - 1][1]});
                }
                const double ref = std::max(1.0, std::abs(fv[l - 1]) + std::abs(gv[l - 1]));
                CHECK(std::abs(sum.x - fv[l - 1]) / ref < 1e-12);
                CHECK(std::abs(sum.y - gv[l - 1]) / ref < 1e-12);
            }
        }
    }
}

TEST_CASE("adjoint identity is algebraically exact") {
    GasModel gas = air();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI);
    for (int trial = 0; trial < 100; ++trial) {
        RandomState st = random_admissible(rng);
        const Primitives s = primitives(st.Q, gas);
        const double a = ang(rng);
        const Vec2 n{std::cos(a), std::sin(a)};
        for (int l = 2; l <= 4; ++l) {
            for (int m = 1; m <= 4; ++m) {
                const Mat2 A = diffusion_matrix(l, m, s, gas);
                const Vec2 g{st.gQ[m - 1][0], st.gQ[m - 1][1]};
                const double lhs = A.apply(g).dot(n);
                const double rhs = g.dot(A.apply_transpose(n));
                CHECK(std::abs(lhs - rhs) < 1e-15 * std::max(1.0, std::abs(lhs)));
            }
        }
    }
}

TEST_CASE("antiderivative matrices and the compatibility condition") {
    GasModel gas = air();  // constant mu
    const double Q[4] = {1, 1, 0, 3.0};
    const Primitives s = primitives(Q, gas);
    SUBCASE("pinned B2 at u=1, v=0, mu=1") {
        const Mat2 B = antiderivative_matrix(2, s, gas);
        CHECK(B(0, 0) == doctest::Approx(4.0 / 3.0));
        CHECK(B(0, 1) == doctest::Approx(0.0));
        CHECK(B(1, 0) == doctest::Approx(0.0));
        CHECK(B(1, 1) == doctest::Approx(1.0));
    }
    SUBCASE("the energy equation has no antiderivative") {
        CHECK_THROWS_WITH_AS(antiderivative_matrix(4, s, gas),
                             doctest::Contains("does not exist for the energy equation"),
                             SolverError);
    }
    SUBCASE("finite-difference Jacobians of B match A") {
        std::mt19937 rng(17);
        const double step = 1e-6;
        for (int trial = 0; trial < 20; ++trial) {
            RandomState st = random_admissible(rng);
            for (int l : {2, 3}) {
                for (int m = 1; m <= 3; ++m) {
                    double Qp[4], Qm[4];
                    for (int i = 0; i < 4; ++i) Qp[i] = Qm[i] = st.Q[i];
                    Qp[m - 1] += step;
                    Qm[m - 1] -= step;
                    const Mat2 Bp = antiderivative_matrix(l, primitives(Qp, gas), gas);
                    const Mat2 Bm = antiderivative_matrix(l, primitives(Qm, gas), gas);
                    const Mat2 A = diffusion_matrix(l, m, primitives(st.Q, gas), gas);
                    for (int i = 0; i < 4; ++i) {
                        const double fd = (Bp.a[i] - Bm.a[i]) / (2 * step);
                        if (std::abs(A.a[i]) > 1e-12)
                            CHECK(fd == doctest::Approx(A.a[i]).epsilon(1e-5));
                        else
                            CHECK(std::abs(fd) < 1e-5);
                    }
                }
            }
        }
    }
}

TEST_CASE("reflection symmetry maps x-momentum matrices onto y-momentum ones") {
    GasModel gas = air();
    std::mt19937 rng(31);
    auto swap_mat = [](const Mat2& M) {
        // S M S with S the coordinate swap
        return Mat2{{M(1, 1), M(1, 0), M(0, 1), M(0, 0)}};
    };
    for (int trial = 0; trial < 30; ++trial) {
        RandomState st = random_admissible(rng);
        const double Qs[4] = {st.Q[0], st.Q[2], st.Q[1], st.Q[3]};  // swap u and v
        const Primitives s = primitives(st.Q, gas);
        const Primitives ss = primitives(Qs, gas);
        const int swap_m[5] = {0, 1, 3, 2, 4};
        for (int m = 1; m <= 4; ++m) {
            const Mat2 lhs = swap_mat(diffusion_matrix(2, m, ss, gas));
            const Mat2 rhs = diffusion_matrix(3, swap_m[m], s, gas);
            for (int i = 0; i < 4; ++i)
                CHECK(lhs.a[i] == doctest::Approx(rhs.a[i]).epsilon(1e-14));
        }
        const Mat2 lhs = swap_mat(diffusion_matrix(4, 2, ss, gas));
        const Mat2 rhs = diffusion_matrix(4, 3, s, gas);
        for (int i = 0; i < 4; ++i) CHECK(lhs.a[i] == doctest::Approx(rhs.a[i]).epsilon(1e-14));
    }
}
