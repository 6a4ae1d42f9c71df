#pragma once
#include "necklace/estimate.hpp"
#include "necklace/geometry.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace necklace {

struct CrownParams {
    int m = 0;
    double mu = 0;
    double d = 0;
    double csc_sum = 0;
    std::vector<Point3> xi;  // xi_1..xi_m stored 0-based
};

// m even and >= 8.
CrownParams make_crown(int m);

enum class ProfileTag { talenti, u_star, u_star_corrected, custom };
std::string to_string(ProfileTag t);

// Concentration point with a length scale; guides quadrature.
struct Feature {
    Point3 center;
    double scale;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

struct ProfileHandle {
    std::function<double(const Point3&)> value;
    std::function<Point3(const Point3&)> grad;  // may be empty
    ProfileTag tag = ProfileTag::custom;
    std::vector<Feature> features;

    double operator()(const Point3& z) const { return value(z); }
    // Analytic gradient when available, else fourth-order central differences.
    Point3 gradient(const Point3& z) const;
    Mat3 hessian(const Point3& z) const;
};

ProfileHandle talenti_profile();
ProfileHandle u_star_profile(const CrownParams& p);
ProfileHandle u_star_corrected_profile(const CrownParams& p);

double u_bubble(const Point3& z);
Point3 u_bubble_grad(const Point3& z);
double u_star(const Point3& z, const CrownParams& p);
Point3 u_star_grad(const Point3& z, const CrownParams& p);

// Throws DomainError at the poles (+-1, 0, 0).
double psi_d11(const Point3& z);
// Warns within 1e-6 of a pole.
Estimate psi_d1(const Point3& z, const CrownParams& p);

// Closed form of psi_d1 at (cos pi/m, sin pi/m, 0).
double psi_d1_mid_closed(const CrownParams& p);
// sum_{j=1}^{m/2} 2|sin(2(j-1)pi/m - pi/m)| and its closed form.
double right1_sum(int m);
double right1_closed(int m);

struct MidValue {
    double ustar = 0;
    double psi = 0;
    double value = 0;  // ustar + psi
    double bound = 0;  // 3^{1/4} d / (2 pi log m)
};
MidValue q_mid_lower(const CrownParams& p);

struct CscTermCheck {
    int checked_terms = 0;
    bool termwise_ok = true;
    double aggregate_lhs = 0;  // sum csc(j pi/m) - sum |csc((2j-3) pi/m)|, j = 1..m/2
    double aggregate_rhs = 0;  // -csc(pi/m)
    bool aggregate_ok = true;
};
CscTermCheck qmiddle_term_check(int m);

struct HParam {
    double h = 0, r = 0, theta = 0;
};
HParam h_param(const Point3& z, const CrownParams& p);

// Kernel Z_j (j = 0..5) of the linearized problem around a placed profile.
double kernel_z(int j, const Point3& y, const ProfileHandle& q, const Point3& xi, double theta_star);
// Angle of grad q(xi) in the (z1, z2) plane.
double normal_angle(const ProfileHandle& q, const Point3& xi);

// Seven-point Laplacian.
double fd_laplacian(const std::function<double(const Point3&)>& f, const Point3& z, double h);

} // namespace necklace
