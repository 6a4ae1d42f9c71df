#pragma once
#include <functional>
#include <limits>

namespace necklace {

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value = 0;
    double error = 0;
    int evaluations = 0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Globally adaptive G7K15. b may be +inf. Throws AccuracyError on non-convergence.
QuadratureResult integrate_report(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureConfig& cfg = {});
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Complete elliptic integral of the first kind, modulus sigma in [0, 1).
double elliptic_k(double sigma, const QuadratureConfig& cfg = {});
// Log-series branch, exposed for tests. Valid for sigma close to 1.
double elliptic_k_log_series(double sigma);

double bessel_k0(double t, const QuadratureConfig& cfg = {});
double bessel_k0_prime(double t, const QuadratureConfig& cfg = {});

// zeta(3) or zeta(5); anything else is unsupported.
double zeta_const(int s);
double euler_gamma();

} // namespace necklace
