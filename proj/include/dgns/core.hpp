#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dgns {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// 2x2 matrix, row-major.
struct Mat2 {
    std::array<double, 4> a{0, 0, 0, 0};

    double& operator()(int i, int j) { return a[2 * i + j]; }
    double operator()(int i, int j) const { return a[2 * i + j]; }

    Vec2 apply(const Vec2& v) const { return {a[0] * v.x + a[1] * v.y, a[2] * v.x + a[3] * v.y}; }
    Vec2 apply_transpose(const Vec2& v) const { return {a[0] * v.x + a[2] * v.y, a[1] * v.x + a[3] * v.y}; }
    double det() const { return a[0] * a[3] - a[1] * a[2]; }
    Mat2 inverse() const {
        const double d = det();
        return Mat2{{a[3] / d, -a[1] / d, -a[2] / d, a[0] / d}};
    }
};

class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a state leaves the admissible set (rho or internal energy
/// at or below the guard threshold). No clipping is ever applied.
class InvalidStateError : public SolverError {
  public:
    explicit InvalidStateError(const std::string& msg) : SolverError(msg) {}
};

constexpr double kAdmissibleFloor = 1e-12;

}  // namespace dgns
