#include "dgns/exact_solutions.hpp"

#include <cmath>

namespace dgns {

void ExactSolution::conserved(double x, double y, double t, const GasModel& gas, double Q[4]) const {
    const ExactEval s = eval(x, y, t);
    const double rho = s.val[0], u = s.val[1], v = s.val[2], e = s.val[3];
    Q[0] = rho;
    Q[1] = rho * u;
    Q[2] = rho * v;
    Q[3] = rho * e + 0.5 * rho * (u * u + v * v);
    (void)gas;
}

ExactSolution manufactured_solution_1() {
    ExactSolution sol;
    sol.eval = [](double x, double y, double t) {
        const double w = 2.0 * M_PI;
        const double th = w * (x + y) - 2.0 * t;
        const double s = std::sin(th), c = std::cos(th);
        ExactEval out{};
        // rho and u ride the sine, v and e the cosine, amplitude 0.1.
        const double fs[4] = {1.0 + 0.1 * s, 1.0 + 0.1 * s, 1.0 + 0.1 * c, 1.0 + 0.1 * c};
        const double f1[4] = {0.1 * c, 0.1 * c, -0.1 * s, -0.1 * s};   // d/dtheta
        const double f2[4] = {-0.1 * s, -0.1 * s, -0.1 * c, -0.1 * c}; // d2/dtheta2
        for (int m = 0; m < 4; ++m) {
            out.val[m] = fs[m];
            out.d1[m][0] = f1[m] * w;
            out.d1[m][1] = f1[m] * w;
            out.d1[m][2] = f1[m] * -2.0;
            out.d2[m][0] = f2[m] * w * w;
            out.d2[m][1] = f2[m] * w * w;
            out.d2[m][2] = f2[m] * w * w;
        }
        return out;
    };
    return sol;
}

namespace {

/// f(ax + by + ct) with f one of sin/cos, plus derivatives.
struct Wave {
    double a, b, c;
    bool is_sin;
    double v, dx, dy, dt, dxx, dxy, dyy;

    void eval(double x, double y, double t) {
        const double th = a * x + b * y + c * t;
        const double s = std::sin(th), co = std::cos(th);
        const double f = is_sin ? s : co;
        const double f1 = is_sin ? co : -s;
        const double f2 = -f;
        v = f;
        dx = f1 * a;
        dy = f1 * b;
        dt = f1 * c;
        dxx = f2 * a * a;
        dxy = f2 * a * b;
        dyy = f2 * b * b;
    }
};

/// C0 + C1 * w1 * w2 with product-rule derivatives.
void product_field(double C0, double C1, Wave& w1, Wave& w2, double x, double y, double t,
                   double* val, double d1[3], double d2[3]) {
    w1.eval(x, y, t);
    w2.eval(x, y, t);
    *val = C0 + C1 * w1.v * w2.v;
    d1[0] = C1 * (w1.dx * w2.v + w1.v * w2.dx);
    d1[1] = C1 * (w1.dy * w2.v + w1.v * w2.dy);
    d1[2] = C1 * (w1.dt * w2.v + w1.v * w2.dt);
    d2[0] = C1 * (w1.dxx * w2.v + 2.0 * w1.dx * w2.dx + w1.v * w2.dxx);
    d2[1] = C1 * (w1.dxy * w2.v + w1.dx * w2.dy + w1.dy * w2.dx + w1.v * w2.dxy);
    d2[2] = C1 * (w1.dyy * w2.v + 2.0 * w1.dy * w2.dy + w1.v * w2.dyy);
}

}  // namespace

ExactSolution manufactured_solution_2() {
    ExactSolution sol;
    sol.eval = [](double x, double y, double t) {
        const double P = M_PI;
        ExactEval out{};
        Wave w1, w2;
        // rho = 1 - 0.1 sin(4 pi x + 4 pi t) cos(2 pi y - 2 pi t)
        w1 = {4 * P, 0, 4 * P, true, 0, 0, 0, 0, 0, 0, 0};
        w2 = {0, 2 * P, -2 * P, false, 0, 0, 0, 0, 0, 0, 0};
        product_field(1.0, -0.1, w1, w2, x, y, t, &out.val[0], out.d1[0], out.d2[0]);
        // u = 2 + 0.2 sin(2 pi x - 2 pi t) cos(4 pi y - 4 pi t)
        w1 = {2 * P, 0, -2 * P, true, 0, 0, 0, 0, 0, 0, 0};
        w2 = {0, 4 * P, -4 * P, false, 0, 0, 0, 0, 0, 0, 0};
        product_field(2.0, 0.2, w1, w2, x, y, t, &out.val[1], out.d1[1], out.d2[1]);
        // v = 3 + 0.3 cos(2 pi x - 2 pi t) sin(4 pi y + 4 pi t)
        w1 = {2 * P, 0, -2 * P, false, 0, 0, 0, 0, 0, 0, 0};
        w2 = {0, 4 * P, 4 * P, true, 0, 0, 0, 0, 0, 0, 0};
        product_field(3.0, 0.3, w1, w2, x, y, t, &out.val[2], out.d1[2], out.d2[2]);
        // e = 50 - 10 cos(2 pi x - 4 pi t) sin(4 pi y + 4 pi t)
        w1 = {2 * P, 0, -4 * P, false, 0, 0, 0, 0, 0, 0, 0};
        w2 = {0, 4 * P, 4 * P, true, 0, 0, 0, 0, 0, 0, 0};
        product_field(50.0, -10.0, w1, w2, x, y, t, &out.val[3], out.d1[3], out.d2[3]);
        return out;
    };
    return sol;
}

ExactSolution uniform_flow(const FreestreamState& fs, const GasModel& gas) {
    ExactSolution sol;
    const double e = fs.p / ((gas.gamma - 1.0) * fs.rho);
    sol.eval = [fs, e](double, double, double) {
        ExactEval out{};
        out.val[0] = fs.rho;
        out.val[1] = fs.u;
        out.val[2] = fs.v;
        out.val[3] = e;
        return out;
    };
    return sol;
}

void mms_source(const ExactSolution& sol, double x, double y, double t, const GasModel& gas,
                double S[4]) {
    const ExactEval f = sol.eval(x, y, t);
    const double r = f.val[0], u = f.val[1], v = f.val[2], e = f.val[3];
    const double rx = f.d1[0][0], ry = f.d1[0][1], rt = f.d1[0][2];
    const double ux = f.d1[1][0], uy = f.d1[1][1], ut = f.d1[1][2];
    const double vx = f.d1[2][0], vy = f.d1[2][1], vt = f.d1[2][2];
    const double ex = f.d1[3][0], ey = f.d1[3][1], et = f.d1[3][2];
    const double uxx = f.d2[1][0], uxy = f.d2[1][1], uyy = f.d2[1][2];
    const double vxx = f.d2[2][0], vxy = f.d2[2][1], vyy = f.d2[2][2];
    const double exx = f.d2[3][0], eyy = f.d2[3][2];

    const double gm1 = gas.gamma - 1.0;
    const double ke = u * u + v * v;

    // Time derivatives of the conserved vector.
    const double Q1t = rt;
    const double Q2t = rt * u + r * ut;
    const double Q3t = rt * v + r * vt;
    const double Q4t = rt * e + r * et + 0.5 * rt * ke + r * (u * ut + v * vt);

    // Convective divergence.
    const double px = gm1 * (rx * e + r * ex);
    const double py = gm1 * (ry * e + r * ey);
    const double c1 = rx * u + r * ux + ry * v + r * vy;
    const double c2 = rx * u * u + 2.0 * r * u * ux + px + ry * u * v + r * (uy * v + u * vy);
    const double c3 = rx * u * v + r * (ux * v + u * vx) + ry * v * v + 2.0 * r * v * vy + py;
    const double W = gas.gamma * r * e + 0.5 * r * ke;  // E + p
    const double Wx = gas.gamma * (rx * e + r * ex) + 0.5 * rx * ke + r * (u * ux + v * vx);
    const double Wy = gas.gamma * (ry * e + r * ey) + 0.5 * ry * ke + r * (u * uy + v * vy);
    const double c4 = ux * W + u * Wx + vy * W + v * Wy;

    // Viscous divergence; mu may depend on T = e/cv.
    const double T = e / gas.cv;
    const double mu = gas.viscosity(T);
    const double dmudT = gas.viscosity_dT(T);
    const double mux = dmudT * ex / gas.cv;
    const double muy = dmudT * ey / gas.cv;
    const double t11b = 4.0 / 3.0 * ux - 2.0 / 3.0 * vy;   // tau11 / mu
    const double t12b = uy + vx;
    const double t22b = -2.0 / 3.0 * ux + 4.0 / 3.0 * vy;
    const double t11 = mu * t11b, t12 = mu * t12b, t22 = mu * t22b;
    const double t11x = mux * t11b + mu * (4.0 / 3.0 * uxx - 2.0 / 3.0 * vxy);
    const double t12x = mux * t12b + mu * (uxy + vxx);
    const double t12y = muy * t12b + mu * (uyy + vxy);
    const double t22y = muy * t22b + mu * (-2.0 / 3.0 * uxy + 4.0 / 3.0 * vyy);
    const double gp = gas.gamma / gas.prandtl;
    const double v2 = t11x + t12y;
    const double v3 = t12x + t22y;
    const double v4 = ux * t11 + u * t11x + vx * t12 + v * t12x + gp * (mux * ex + mu * exx) +
                      uy * t12 + u * t12y + vy * t22 + v * t22y + gp * (muy * ey + mu * eyy);

    S[0] = Q1t + c1;
    S[1] = Q2t + c2 - v2;
    S[2] = Q3t + c3 - v3;
    S[3] = Q4t + c4 - v4;
}

}  // namespace dgns
