#ifndef GEOFLOW_VEC3_HPP
#define GEOFLOW_VEC3_HPP

#include <array>
#include <cmath>

namespace geoflow {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double a) { x *= a; y *= a; z *= a; return *this; }
};

inline Vec3 operator*(double a, const Vec3& v) { return v * a; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Row-major 3x3 rotation (or general linear) matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    double operator()(int i, int j) const { return m[3 * i + j]; }
    double& operator()(int i, int j) { return m[3 * i + j]; }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    // For orthogonal matrices this is the inverse action.
    Vec3 apply_transposed(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    static Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
        Mat3 r;
        r(0, 0) = a.x; r(0, 1) = b.x; r(0, 2) = c.x;
        r(1, 0) = a.y; r(1, 1) = b.y; r(1, 2) = c.y;
        r(2, 0) = a.z; r(2, 1) = b.z; r(2, 2) = c.z;
        return r;
    }

    static Mat3 mul(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }

    // Rodrigues rotation by angle |w| about axis w/|w|; identity for w ~ 0.
    static Mat3 rotation(const Vec3& w) {
        const double th = norm(w);
        Mat3 r;
        if (th < 1e-300) return r;
        const Vec3 a = w / th;
        const double c = std::cos(th), s = std::sin(th), t = 1.0 - c;
        r(0, 0) = c + a.x * a.x * t;
        r(0, 1) = a.x * a.y * t - a.z * s;
        r(0, 2) = a.x * a.z * t + a.y * s;
        r(1, 0) = a.y * a.x * t + a.z * s;
        r(1, 1) = c + a.y * a.y * t;
        r(1, 2) = a.y * a.z * t - a.x * s;
        r(2, 0) = a.z * a.x * t - a.y * s;
        r(2, 1) = a.z * a.y * t + a.x * s;
        r(2, 2) = c + a.z * a.z * t;
        return r;
    }

    static Mat3 rotation_z(double angle) { return rotation({0, 0, angle}); }
};

} // namespace geoflow

#endif
