#include "necklace/geometry.hpp"
#include "necklace/errors.hpp"

#include <string>

namespace necklace {

SectorConfig make_sector(int K)
{
    if (K < 4 || K % 2 != 0)
        throw DomainError("sector: K must be even and >= 4, got " + std::to_string(K));
    return {K, M_PI / K};
}

Point3 rotate(const Point3& z, double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * z.x - s * z.y, s * z.x + c * z.y, z.z};
}

Point3 conj(const Point3& z) { return {z.x, -z.y, z.z}; }

Point3 kelvin(const Point3& z)
{
    const double r2 = norm2(z);
    if (r2 == 0.0)
        throw DomainError("kelvin: origin");
    return z / r2;
}

Point3 reflect_across_ray(const Point3& z, double phi) { return rotate(conj(z), 2 * phi); }

bool in_sector(const Point3& z, const SectorConfig& cfg)
{
    constexpr double tol = 1e-12;
    if (norm2(z) >= 1.0)
        return false;
    const double r = std::hypot(z.x, z.y);
    if (r == 0.0)
        return true;
    const double ang = std::atan2(z.y, z.x);
    return ang >= -cfg.theta0 - tol && ang < cfg.theta0 - tol;
}

double extend_odd(const ScalarField& u, const Point3& z, const SectorConfig& cfg)
{
    const double t0 = cfg.theta0;
    const Point3 zb = conj(z);
    double s = 0;
    for (int j = 0; j < cfg.K / 2; ++j) {
        s += u(rotate(z, 4 * j * t0));
        s -= u(rotate(zb, (4 * j + 2) * t0));
    }
    return s;
}

} // namespace necklace
