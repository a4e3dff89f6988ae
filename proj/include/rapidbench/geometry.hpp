#pragma once

#include <cmath>

namespace rapidbench {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// Orientation quaternion in ABB component order [q1, q2, q3, q4] = [w, x, y, z].
struct Quat {
    double w = 1, x = 0, y = 0, z = 0;

    friend bool operator==(const Quat&, const Quat&) = default;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
};

}  // namespace rapidbench
