#include "necklace/errors.hpp"
#include "necklace/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace necklace;

namespace {
Point3 random_point(std::mt19937_64& rng, double r = 2.0)
{
    std::uniform_real_distribution<double> U(-r, r);
    return {U(rng), U(rng), U(rng)};
}
bool near(const Point3& a, const Point3& b, double tol) { return norm(a - b) <= tol; }
} // namespace

TEST_CASE("sector config")
{
    auto s = make_sector(64);
    CHECK(s.K == 64);
    CHECK(s.theta0 == M_PI / 64);
    CHECK_THROWS_AS(make_sector(5), DomainError);
    CHECK_THROWS_AS(make_sector(2), DomainError);
}

TEST_CASE("rotate")
{
    CHECK(near(rotate({1, 0, 0}, M_PI / 2), {0, 1, 0}, 1e-15));
    Point3 z{0.3, -1.2, 0.7};
    CHECK(near(rotate(z, 0), z, 0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> A(-7, 7);
    for (int i = 0; i < 200; ++i) {
        const Point3 p = random_point(rng);
        const double a = A(rng), b = A(rng);
        CHECK(near(rotate(rotate(p, a), b), rotate(p, a + b), 1e-14 * 4));
        CHECK(norm(rotate(p, a)) == doctest::Approx(norm(p)).epsilon(1e-14));
    }
}

TEST_CASE("conj and kelvin")
{
    CHECK(near(conj({1, 2, 3}), {1, -2, 3}, 0));
    CHECK(near(kelvin({2, 0, 0}), {0.5, 0, 0}, 0));
    CHECK_THROWS_AS(kelvin({0, 0, 0}), DomainError);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Point3 p = random_point(rng);
        CHECK(near(conj(conj(p)), p, 0));
        CHECK(norm(conj(p)) == norm(p));
        CHECK(near(kelvin(kelvin(p)), p, 1e-14 * std::max(1.0, norm(p))));
        CHECK(norm(kelvin(p)) == doctest::Approx(1 / norm(p)).epsilon(1e-14));
    }
}

TEST_CASE("in_sector")
{
    auto s = make_sector(8);
    CHECK(in_sector({0.5, 0, 0}, s));
    CHECK_FALSE(in_sector({1.5, 0, 0}, s));
    CHECK(in_sector(rotate({0.5, 0, 0}, -s.theta0), s));
    CHECK_FALSE(in_sector(rotate({0.5, 0, 0}, s.theta0), s));
    CHECK_FALSE(in_sector(rotate({0.5, 0, 0}, 2 * s.theta0), s));
}

TEST_CASE("extend_odd")
{
    auto s = make_sector(8);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i)
        CHECK(extend_odd([](const Point3&) { return 1.0; }, random_point(rng), s) == doctest::Approx(0).scale(1));

    // Smooth, non-symmetric test function.
    auto u = [](const Point3& z) { return std::exp(0.3 * z.x - 0.7 * z.y + 0.2 * z.z) / (1 + norm2(z - Point3{0.4, 0.1, 0})); };
    for (int i = 0; i < 100; ++i) {
        const Point3 z = random_point(rng);
        // vanishes on the ray at theta0
        const double r = std::abs(z.x) + 0.1;
        CHECK(std::abs(extend_odd(u, rotate({r, 0, z.z}, s.theta0), s)) <= 1e-12);
        // odd across rays at odd multiples of theta0
        for (int j : {1, 3, 5}) {
            const double v = extend_odd(u, z, s);
            const double w = extend_odd(u, reflect_across_ray(z, j * s.theta0), s);
            CHECK(std::abs(v + w) <= 1e-12);
        }
    }
}
