#pragma once
#include "necklace/crown.hpp"
#include "necklace/geometry.hpp"

#include <vector>

namespace necklace {

struct PlacedBubble {
    double eps = 1;
    double a = 0;
    double q_hat = 0;
    double w_norm = 0, alpha_w = 0;
    double b_norm = 0.9, alpha_b = 0;
    double beta_hat = 0;
    Mat3 W{};
    // Only needed by q_a / direct T_A.
    ProfileHandle profile;
    Point3 xi;
    double theta_star = 0;

    Point3 b() const;
    Point3 w() const;
    double d() const;  // (1 - |b|^2) / (2|b|)
    double beta() const { return theta_star + beta_hat; }
    Point3 xi_hat() const;
};

// Derives q_hat, w, W from the profile at xi_hat = xi + a nu.
PlacedBubble place_bubble(const ProfileHandle& q, const Point3& xi, double eps, double a,
                          double b_norm, double alpha_b, double beta_hat);

struct KernelReport {
    double direct = 0;
    double closed_form = 0;
    double asymptotic = 0;
    double abs_err_dc = 0;
    double abs_err_ca = 0;
    bool richardson = false;
};

struct KernelConfig {
    SectorConfig sector = make_sector(64);
    double fd_step_grad = 1e-6;
    double fd_step_hess = 1e-4;
    double tol_grad = 1e-4;
    double tol_hess = 1e-3;
};

struct Image {
    Point3 y;
    double sign;
};
// Images entering gamma: reflections (+) at angles (4j+2) theta0, j = 0..K/2-1, and
// rotations (-) at 4j theta0, j = 1..K/2-1.
std::vector<Image> gamma_images(const Point3& z, const SectorConfig& s);

double gamma_direct(const Point3& z, const Point3& p, const SectorConfig& s);
double h0(const Point3& z, const Point3& p);
double h0e(const Point3& z, const Point3& p, const SectorConfig& s);

// Requires |b| > 1/2 and |alpha_b| < theta0 / 2.
KernelReport gamma_bb(double b_norm, double alpha_b, const SectorConfig& s);
KernelReport h0e_bb(double b_norm, double alpha_b, const SectorConfig& s);

enum class KernelKind { gamma, h0e };
enum class Slot { z, p };

// w . grad_{slot} kernel at (b, b).
KernelReport kernel_grad(KernelKind kind, Slot slot, const PlacedBubble& A, const KernelConfig& cfg);
// w^T grad_z grad_p kernel w at (b, b).
KernelReport kernel_hess(KernelKind kind, const PlacedBubble& A, const KernelConfig& cfg);

// Closed forms alone (no finite differences); used by the energy.
double gamma_bb_closed(double b_norm, double alpha_b, const SectorConfig& s);
double h0e_bb_closed(double b_norm, double alpha_b, const SectorConfig& s);
double grad_closed(KernelKind kind, Slot slot, const PlacedBubble& A, const SectorConfig& s);
double hess_closed(KernelKind kind, const PlacedBubble& A, const SectorConfig& s);

// Quadratic-form matrix of the gamma Hessian in (alpha_w, alpha_b).
std::array<std::array<double, 2>, 2> a_gamma(int K);

// Transformed bubble Q_A; throws DomainError at z = b.
double q_a(const Point3& z, const PlacedBubble& A);
// Second-order expansion in eps.
double q_a_expansion(const Point3& z, const PlacedBubble& A);

// direct: alternating image sum of Q_A.
// closed_form: image sum of the second-order expansion of Q_A.
// asymptotic: eps^{1/2} q_hat gamma + eps^{3/2} w.grad_p gamma + eps^{5/2} W:hess_p gamma / 6.
KernelReport t_a(const Point3& z, const PlacedBubble& A, const SectorConfig& s);

} // namespace necklace
