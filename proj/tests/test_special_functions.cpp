#include "necklace/errors.hpp"
#include "necklace/special_functions.hpp"

#include <doctest.h>

#include <cmath>

using namespace necklace;

TEST_CASE("quadrature basics")
{
    CHECK(integrate([](double) { return 1.0; }, 0, 1) == doctest::Approx(1).epsilon(1e-15));
    CHECK(std::abs(integrate([](double t) { return std::exp(-t); }, 0, kInf) - 1) <= 1e-12);
    const double v = integrate([](double t) { return t == 0 ? 0.0 : t * t / std::sinh(t); }, 0, kInf);
    CHECK(std::abs(v - 3.5 * zeta_const(3)) <= 1e-10);
    QuadratureConfig tight;
    tight.max_subdivisions = 1;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 1e-300;
    CHECK_THROWS_AS(integrate([](double t) { return std::sqrt(t); }, 0, 1, tight), AccuracyError);
}

TEST_CASE("elliptic K")
{
    CHECK(elliptic_k(0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
    const double s = 1 / std::sqrt(2.0);
    // independent oracle: arithmetic-geometric mean
    auto agm = [](double k) {
        double a = 1, b = std::sqrt(1 - k * k);
        for (int i = 0; i < 40; ++i) {
            const double an = (a + b) / 2;
            b = std::sqrt(a * b);
            a = an;
        }
        return M_PI / (2 * a);
    };
    CHECK(std::abs(elliptic_k(s) - agm(s)) <= 1e-10);
    for (double k : {0.1, 0.5, 0.85, 0.9, 0.95, 0.999, 0.999999})
        CHECK(elliptic_k(k) == doctest::Approx(agm(k)).epsilon(1e-12));
    CHECK(elliptic_k_log_series(0.99) == doctest::Approx(agm(0.99)).epsilon(1e-12));

    // -log x + log 4 plus a remainder; the remainder carries a x^2 log x piece
    double prev = 1;
    for (double x : {0.1, 0.05, 0.025, 0.0125}) {
        const double sig = 1 / std::sqrt(1 + x * x);
        const double err = std::abs(elliptic_k(sig) / std::sqrt(1 + x * x) + std::log(x) - std::log(4.0));
        CHECK(err <= x * x * std::abs(std::log(x)));
        CHECK(err < prev);
        prev = err;
    }

    double last = 0;
    for (int i = 0; i < 100; ++i) {
        const double v = elliptic_k(i / 100.0);
        CHECK(v > last);
        last = v;
    }
    CHECK_THROWS_AS(elliptic_k(1.0), DomainError);
}

TEST_CASE("Bessel K0")
{
    const double oracle = integrate([](double u) { return std::exp(-std::cosh(u)); }, 0, 40);
    CHECK(std::abs(bessel_k0(1) - oracle) <= 1e-10);
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0, 25.0, 29.0, 31.0, 45.0})
        CHECK(bessel_k0(t) == doctest::Approx(std::cyl_bessel_k(0.0, t)).epsilon(1e-11));
    for (double t : {20.0, 40.0, 80.0}) {
        CHECK(std::abs(bessel_k0(t) * std::sqrt(2 / M_PI * t) * std::exp(t) - 1) <= 1 / t);
        CHECK(std::abs(-bessel_k0_prime(t) * std::sqrt(2 / M_PI * t) * std::exp(t) - 1) <= 1 / t);
    }
    CHECK(bessel_k0(2) < bessel_k0(1));
    const double h = 1e-5;
    CHECK(std::abs(bessel_k0_prime(2) - (bessel_k0(2 + h) - bessel_k0(2 - h)) / (2 * h)) <= 1e-8);
    for (double t : {0.5, 2.0, 10.0, 35.0}) {
        CHECK(bessel_k0_prime(t) < 0);
        CHECK(bessel_k0_prime(t) == doctest::Approx(-std::cyl_bessel_k(1.0, t)).epsilon(1e-11));
    }
    // log-convexity on a grid
    for (double t = 0.1; t < 50; t *= 1.3) {
        const double h2 = 0.05 * t;
        const double l0 = std::log(bessel_k0(t - h2)), l1 = std::log(bessel_k0(t)), l2 = std::log(bessel_k0(t + h2));
        CHECK(l0 + l2 - 2 * l1 >= -1e-12);
        const double m0 = std::log(-bessel_k0_prime(t - h2)), m1 = std::log(-bessel_k0_prime(t)),
                     m2 = std::log(-bessel_k0_prime(t + h2));
        CHECK(m0 + m2 - 2 * m1 >= -1e-12);
    }
    CHECK(bessel_k0(3.7) == bessel_k0(3.7));
    CHECK_THROWS_AS(bessel_k0(0), DomainError);
}

TEST_CASE("zeta and Euler gamma")
{
    for (int s : {3, 5}) {
        const int N = 1000000;
        double acc = 0;
        for (int j = N; j >= 1; --j)
            acc += std::pow(double(j), -s);
        // tail: integral of x^-s from N+1/2 to infinity
        acc += std::pow(N + 0.5, 1 - s) / (s - 1);
        CHECK(std::abs(zeta_const(s) - acc) <= 1e-12);
    }
    CHECK(zeta_const(3) > zeta_const(5));
    CHECK(zeta_const(5) > 1);
    CHECK_THROWS_AS(zeta_const(4), UnsupportedError);

    const int N = 10000000;
    long double h = 0;
    for (int j = N; j >= 1; --j)
        h += 1.0L / j;
    CHECK(std::abs(double(h - std::log((long double)N)) - euler_gamma()) <= 1e-7);
    CHECK(euler_gamma() > 0.5);
    CHECK(euler_gamma() < 0.6);
}
