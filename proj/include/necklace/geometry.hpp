#pragma once
#include <cmath>
#include <functional>

namespace necklace {

struct Point3 {
    double x = 0, y = 0, z = 0;

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator-() const { return {-x, -y, -z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Point3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Point3& operator+=(const Point3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Point3 operator*(double s, const Point3& p) { return p * s; }
inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Point3& a) { return dot(a, a); }
inline double norm(const Point3& a) { return std::sqrt(norm2(a)); }

struct SectorConfig {
    int K = 4;
    double theta0 = M_PI / 4;
};

// K even and >= 4.
SectorConfig make_sector(int K);

// Rotation of (z1, z2) by theta; z3 untouched.
Point3 rotate(const Point3& z, double theta);
// (z1, -z2, z3)
Point3 conj(const Point3& z);
Point3 kelvin(const Point3& z);

// Reflection across the vertical plane through the ray at angle phi.
Point3 reflect_across_ray(const Point3& z, double phi);

bool in_sector(const Point3& z, const SectorConfig& cfg);

using ScalarField = std::function<double(const Point3&)>;

// Sum over the K/2 rotation images minus the K/2 reflected images.
double extend_odd(const ScalarField& u, const Point3& z, const SectorConfig& cfg);

} // namespace necklace
