#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace t360 {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// Wrap an angle into [-pi, pi). +pi maps to -pi.
inline double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

// Sphere-space axis convention used throughout the library:
// right-handed, +y up, +z front (view axis at zero orientation), +x right.
// Azimuth grows turning right, elevation grows looking up.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{0.0, 0.0, 0.0};
    }
};

// Azimuth in [-pi, pi), elevation in [-pi/2, pi/2], radians.
struct SphericalCoord {
    double azimuth = 0.0;
    double elevation = 0.0;
};

inline SphericalCoord make_spherical(double azimuth, double elevation) {
    SphericalCoord s;
    s.azimuth = wrap_pi(azimuth);
    s.elevation = std::clamp(elevation, -kPi / 2.0, kPi / 2.0);
    return s;
}

// Tait-Bryan head rotation, radians. Angles are unrestricted and wrap.
struct Orientation {
    double yaw = 0.0;
    double pitch = 0.0;
    double roll = 0.0;
};

// 3x3 rotation matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double& operator()(int r, int c) { return m[static_cast<size_t>(r) * 3 + static_cast<size_t>(c)]; }
    double operator()(int r, int c) const { return m[static_cast<size_t>(r) * 3 + static_cast<size_t>(c)]; }

    static Mat3 identity() { return Mat3{}; }

    Mat3 transpose() const {
        Mat3 t;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) t(r, c) = (*this)(c, r);
        return t;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 p;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                p(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) + (*this)(r, 2) * o(2, c);
            }
        }
        return p;
    }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

// Basic rotations realizing the sign contract: positive yaw turns the view
// right, positive pitch looks up, positive roll tilts the head right.
inline Mat3 rot_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    r.m = {c, 0, s, 0, 1, 0, -s, 0, c};
    return r;
}

inline Mat3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    r.m = {1, 0, 0, 0, c, s, 0, -s, c};
    return r;
}

inline Mat3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    r.m = {c, s, 0, -s, c, 0, 0, 0, 1};
    return r;
}

// Y-X-Z chain: yaw about +y, then pitch about the x axis, then roll about z.
inline Mat3 rotation_matrix(const Orientation& o) {
    return rot_y(o.yaw) * rot_x(o.pitch) * rot_z(o.roll);
}

inline Vec3 rotate(const Mat3& r, const Vec3& v) { return r * v; }

inline Vec3 spherical_to_cartesian(const SphericalCoord& s) {
    const double ce = std::cos(s.elevation);
    return {ce * std::sin(s.azimuth), std::sin(s.elevation), ce * std::cos(s.azimuth)};
}

// Inverse of spherical_to_cartesian. Azimuth is 0 at the poles.
inline SphericalCoord cartesian_to_spherical(const Vec3& v) {
    SphericalCoord s;
    s.elevation = std::asin(std::clamp(v.y, -1.0, 1.0));
    s.azimuth = (v.x == 0.0 && v.z == 0.0) ? 0.0 : wrap_pi(std::atan2(v.x, v.z));
    return s;
}

}  // namespace t360
