#pragma once
#include "necklace/crown.hpp"
#include "necklace/kernels.hpp"
#include "necklace/special_functions.hpp"

#include <array>
#include <string>
#include <vector>

namespace necklace {

struct ReducedConfig {
    int K = 64;
    double lambda = 1.0;
    double gnorm = 1.0;
    double cstar = 1.0;
    double delta = 0.1;
};

struct ReducedPoint {
    double eps = 0;
    double a = 0;
    double d = 0;
    double alpha_b = 0;
    double alpha_w = 0;
};

inline double b_from_d(double d) { return std::sqrt(1.0 + d * d) - d; }

struct ConstraintBox {
    double eps_lo, eps_hi;
    double d_lo, d_hi;
    double alpha_b_max, alpha_w_max;
    double a_max(double eps) const { return a_coef * eps; }
    double a_coef;  // delta^{-1} log K
};
ConstraintBox constraint_box(const ReducedConfig& cfg);

struct ShellIntegral {
    double total = 0;
    double tail = 0;  // part beyond r_max
    double r_max = 1e3;
};
// int q(z + xi)^2 / (4 pi |z|^4) dz over R^3 by spherical shells around xi.
// Requires |q(xi)| <= 1e-8.
ShellIntegral c_star_report(const ProfileHandle& q, const Point3& xi, double rel_tol = 1e-9);
double c_star(const ProfileHandle& q, const Point3& xi, double rel_tol = 1e-9);
// int q^6 over R^3 by shells around the origin.
double q6_integral(const ProfileHandle& q, double rel_tol = 1e-10);

double c0(int K, double d);
double c2(int K, double d);
using Mat2 = std::array<std::array<double, 2>, 2>;
// same as a_gamma; rows/cols ordered (alpha_w, alpha_b)
Mat2 a_gamma_matrix(int K);
// Rescaled to (alpha_w, K alpha_b).
Mat2 a_gamma_rescaled(int K);
double min_eigenvalue(const Mat2& M);

enum class PsiMode { leading, full };
PsiMode parse_mode(const std::string& s);
std::string to_string(PsiMode m);

double psi_full(const ReducedPoint& A, const ReducedConfig& cfg);
double psi_leading(const ReducedPoint& A, const ReducedConfig& cfg);
double psi(const ReducedPoint& A, const ReducedConfig& cfg, PsiMode mode);

// Critical eps of the leading model at a = alpha = 0.
double eps_star(double d, const ReducedConfig& cfg);

struct MinimizeResult {
    ReducedPoint argmin;
    double value = 0;
    std::array<double, 5> boundary_distance{};  // normalized, axes eps, a, d, alpha_b, alpha_w
    std::array<bool, 5> interior{};
    bool all_interior = false;
    // Diagnostics.
    double eps_K3 = 0;
    double eps_ratio = 0;  // eps / eps_star(d)
    double d_deviation = 0;  // K d - log K + loglogK / 2
    double a_rel = 0, alpha_b_rel = 0, alpha_w_rel = 0;  // relative to box half-widths
    int evaluations = 0;
};
inline const std::array<const char*, 5> kAxisNames = {"eps", "a", "d", "alpha_b", "alpha_w"};

MinimizeResult minimize_psi(const ReducedConfig& cfg, PsiMode mode, int grid_points = 9);

struct Comparison {
    std::string name;
    double interior = 0;
    double boundary = 0;
    bool holds = false;  // boundary > interior
};
// Boundary-versus-interior comparisons of the leading model.
std::vector<Comparison> boundary_comparisons(const ReducedConfig& cfg);

double j_reduced(double q6, const ReducedPoint& A, const ReducedConfig& cfg, PsiMode mode);

struct ModelConstants {
    int m = 16;
    Point3 xi;
    double gnorm = 0;
    double cstar = 0;
};
// Computed from U_* at m = 16 with xi the outer in-plane root near xi_1. Cached.
const ModelConstants& default_model_constants();

} // namespace necklace
