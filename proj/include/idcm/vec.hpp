#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace idcm {

// Vectors live in R^3; planar (n=2) data keeps z = 0 so that dot products,
// norms and linear maps work unchanged in both dimensions.
struct Vec {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec() = default;
    Vec(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec operator+(const Vec& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec operator-(const Vec& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec operator-() const { return {-x, -y, -z}; }
    Vec operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec& v) { return std::sqrt(dot(v, v)); }
inline Vec cross(const Vec& a, const Vec& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Vec normalized(const Vec& v) {
    double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return v / n;
}

// distance ignoring sign, used for antipodal atom matching
inline double antipodal_distance(const Vec& a, const Vec& b) {
    return std::min(norm(a - b), norm(a + b));
}

inline Vec unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta), 0.0}; }
inline double angle_of(const Vec& v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0) a += 2.0 * std::acos(-1.0);
    return a;
}

// 3x3 matrix; an n=2 linear map is embedded with third row/column equal to e3,
// so det and inverse coincide with the 2x2 ones.
struct Mat {
    std::array<std::array<double, 3>, 3> a{};

    static Mat identity() {
        Mat m;
        m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
        return m;
    }
    static Mat from_2x2(double a00, double a01, double a10, double a11) {
        Mat m = identity();
        m.a[0][0] = a00; m.a[0][1] = a01;
        m.a[1][0] = a10; m.a[1][1] = a11;
        return m;
    }
    static Mat rotation_2d(double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        return from_2x2(c, -s, s, c);
    }
    static Mat rotation_axis(const Vec& axis, double theta) {
        Vec u = normalized(axis);
        double c = std::cos(theta), s = std::sin(theta), t = 1.0 - c;
        Mat m;
        m.a = {{{c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s},
                {u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s},
                {u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t}}};
        return m;
    }

    Vec apply(const Vec& v) const {
        return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
                a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
                a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
    }

    Mat transpose() const {
        Mat m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.a[i][j] = a[j][i];
        return m;
    }

    double det() const {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    Mat inverse() const {
        double d = det();
        if (std::abs(d) < 1e-300) throw std::invalid_argument("singular matrix");
        Mat m;
        m.a[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
        m.a[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
        m.a[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
        m.a[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
        m.a[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
        m.a[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
        m.a[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
        m.a[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
        m.a[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
        return m;
    }
};

inline void require_unimodular(const Mat& phi, bool allow_reflection = false) {
    double d = phi.det();
    double dev = allow_reflection ? std::abs(std::abs(d) - 1.0) : std::abs(d - 1.0);
    if (dev >= 1e-10)
        throw std::invalid_argument("transform must be unimodular (det pinned to 1)");
}

}  // namespace idcm
