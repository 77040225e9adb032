#include "dgns/quadrature.hpp"

#include <cmath>

namespace dgns {

namespace {

void add_centroid(TriangleRule& r, double w) {
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(w);
}

// Barycentric (a,a,1-2a) orbit mapped to reference coordinates (r,s).
void add_orbit3(TriangleRule& r, double a, double w) {
    const double c = 1.0 - 2.0 * a;
    r.points.push_back({a, a});
    r.points.push_back({a, c});
    r.points.push_back({c, a});
    for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

void add_orbit6(TriangleRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    const Vec2 pts[6] = {{b, c}, {c, b}, {a, c}, {c, a}, {a, b}, {b, a}};
    for (const auto& p : pts) {
        r.points.push_back(p);
        r.weights.push_back(w);
    }
}

TriangleRule rule_degree1() {
    TriangleRule r;
    r.degree = 1;
    add_centroid(r, 0.5);
    return r;
}

TriangleRule rule_degree2() {
    TriangleRule r;
    r.degree = 2;
    add_orbit3(r, 1.0 / 6.0, 1.0 / 6.0);
    return r;
}

TriangleRule rule_degree4() {
    TriangleRule r;
    r.degree = 4;
    add_orbit3(r, 0.44594849091596488631832925388305, 0.5 * 0.22338158967801146569500700843312);
    add_orbit3(r, 0.09157621350977074345957146340220, 0.5 * 0.10995174365532186763832632490021);
    return r;
}

TriangleRule rule_degree5() {
    TriangleRule r;
    r.degree = 5;
    const double s15 = std::sqrt(15.0);
    add_centroid(r, 0.5 * 9.0 / 40.0);
    add_orbit3(r, (6.0 + s15) / 21.0, 0.5 * (155.0 + s15) / 1200.0);
    add_orbit3(r, (6.0 - s15) / 21.0, 0.5 * (155.0 - s15) / 1200.0);
    return r;
}

TriangleRule rule_degree8() {
    TriangleRule r;
    r.degree = 8;
    add_centroid(r, 0.5 * 0.14431560767778716825109111048906);
    add_orbit3(r, 0.17056930775176020662229350149146, 0.5 * 0.10321737053471825028179155029212);
    add_orbit3(r, 0.05054722831703097545842355059660, 0.5 * 0.03245849762319808031092592834178);
    add_orbit3(r, 0.45929258829272315602881551449417, 0.5 * 0.09509163426728462479389610438858);
    add_orbit6(r, 0.26311282963463811342178578628464, 0.72849239295540428124100037917606,
               0.5 * 0.02723031417443499426484469007390);
    return r;
}

TriangleRule rule_degree9() {
    TriangleRule r;
    r.degree = 9;
    add_centroid(r, 0.04856789814139887835117);
    add_orbit3(r, 0.4896825191987375153537, 0.01566735011356968310814);
    add_orbit3(r, 0.4370895914929361418251, 0.03891377050238719182138);
    add_orbit3(r, 0.1882035356190327241914, 0.03982386946360500806104);
    add_orbit3(r, 0.0447295133944527490977, 0.01278883782934903903654);
    add_orbit6(r, 0.2219629891607658678, 0.7411985987844977616393, 0.02164176968864472592792);
    return r;
}

// Positive tensor rule on the collapsed square, symmetrized over the three
// rotations of the triangle so the result is invariant like the tables.
TriangleRule duffy_rule(int degree) {
    const int n = (degree + 3) / 2;  // 2n-1 >= degree+1 covers the (1-b) factor
    const EdgeRule gl = gauss_legendre(n);
    TriangleRule base;
    base.degree = degree;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double a = gl.points[i], b = gl.points[j];
            base.points.push_back({a * (1.0 - b), b});
            base.weights.push_back(gl.weights[i] * gl.weights[j] * (1.0 - b));
        }
    }
    TriangleRule r;
    r.degree = degree;
    for (size_t q = 0; q < base.points.size(); ++q) {
        const double x = base.points[q].x, y = base.points[q].y;
        const double l0 = 1.0 - x - y;
        const Vec2 rot[3] = {{x, y}, {y, l0}, {l0, x}};
        for (const auto& p : rot) {
            r.points.push_back(p);
            r.weights.push_back(base.weights[q] / 3.0);
        }
    }
    return r;
}

}  // namespace

TriangleRule triangle_rule(int min_degree) {
    if (min_degree <= 1) return rule_degree1();
    if (min_degree <= 2) return rule_degree2();
    if (min_degree <= 4) return rule_degree4();
    if (min_degree <= 5) return rule_degree5();
    if (min_degree <= 8) return rule_degree8();
    if (min_degree <= 9) return rule_degree9();
    return duffy_rule(min_degree);
}

double min_quadrature_weight(const TriangleRule& rule) {
    double sum = 0, mn = rule.weights[0];
    for (double w : rule.weights) {
        sum += w;
        mn = std::min(mn, w);
    }
    return mn / sum;
}

EdgeRule gauss_legendre(int n) {
    if (n < 1) throw SolverError("gauss_legendre: n must be positive");
    EdgeRule r;
    r.points.resize(n);
    r.weights.resize(n);
    // Newton on P_n over [-1,1] from Chebyshev initial guesses.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            const double dp = n * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double pn1 = (n == 1) ? 1.0 : p0;
        const double dp = (n == 1) ? 1.0 : n * (x * p1 - pn1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1,1] -> [0,1], smallest point first.
        r.points[n - 1 - i] = 0.5 * (x + 1.0);
        r.weights[n - 1 - i] = 0.5 * w;
    }
    return r;
}

}  // namespace dgns
