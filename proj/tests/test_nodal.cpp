#include "necklace/errors.hpp"
#include "necklace/nodal.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace necklace;

TEST_CASE("radial root")
{
    const auto p = make_crown(64);
    const auto q = u_star_profile(p);
    const Point3 dir = p.xi[0] / norm(p.xi[0]);
    const auto r = radial_nodal_root(p, q, 1, dir);
    CHECK(64 * r.t >= 0.001);
    CHECK(64 * r.t <= 50);
    CHECK(q(p.xi[0] + dir * (r.t - 1e-9)) * q(p.xi[0] + dir * (r.t + 1e-9)) <= 0);
    const auto r2 = radial_nodal_root(p, q, 1, dir, 5e-13);
    CHECK(std::abs(r2.t - r.t) <= 1e-10);
    // other bubbles by symmetry
    const Point3 d5 = p.xi[4] / norm(p.xi[4]);
    CHECK(radial_nodal_root(p, q, 5, d5).t == doctest::Approx(r.t).epsilon(1e-9));
    CHECK_THROWS_AS(radial_nodal_root(p, talenti_profile(), 1, dir), NotFoundError);
}

TEST_CASE("U_* mesh")
{
    const auto p = make_crown(16);
    const auto q = u_star_profile(p);
    const auto mesh = nodal_mesh(q, Box{}, 48);
    REQUIRE_FALSE(mesh.points.empty());
    CHECK(mesh.points.size() == mesh.values.size());
    CHECK(mesh.points.size() == mesh.gradients.size());
    for (std::size_t i = 0; i < mesh.points.size(); ++i) {
        const Point3& z = mesh.points[i];
        CHECK(std::abs(mesh.values[i]) <= 1e-8);
        CHECK(std::abs(z.x) <= 2.5);
        CHECK(std::abs(z.y) <= 2.5);
        CHECK(std::abs(z.z) <= 2.5);
        const double n = norm(z);
        if (n >= 0.5 && n <= 2.0)
            CHECK(std::abs(q(kelvin(z))) <= 1e-6);
    }
    CHECK(gradient_min_on_nodal(mesh) > 0);

    const auto fine = nodal_mesh(q, Box{}, 96);
    const double ratio = double(fine.points.size()) / mesh.points.size();
    CHECK(ratio >= 2);
    CHECK(ratio <= 8);

    // deterministic regardless of thread scheduling
    const auto again = nodal_mesh(q, Box{}, 48);
    REQUIRE(again.points.size() == mesh.points.size());
    for (std::size_t i = 0; i < mesh.points.size(); ++i)
        CHECK(norm(again.points[i] - mesh.points[i]) == 0);

    std::ostringstream csv, obj;
    write_mesh_csv(csv, mesh);
    write_mesh_obj(obj, mesh);
    CHECK(csv.str().rfind("x,y,z,residual,gradnorm\n", 0) == 0);
    CHECK(obj.str().find("v ") != std::string::npos);
}

TEST_CASE("evenness in z3")
{
    const auto p = make_crown(16);
    const auto q = u_star_profile(p);
    for (double t = 0; t < 6.28; t += 0.37)
        for (double r : {0.3, 0.9, 1.6, 2.2}) {
            const Point3 z{r * std::cos(t), r * std::sin(t), 0};
            CHECK(std::abs(q.gradient(z).z) <= 1e-12);
        }
}

TEST_CASE("empty mesh")
{
    const auto mesh = nodal_mesh(talenti_profile(), Box{}, 32);
    CHECK(mesh.points.empty());
    CHECK_THROWS_AS(gradient_min_on_nodal(mesh), DomainError);
    CHECK_THROWS_AS(nodal_mesh(talenti_profile(), Box{}, 8), DomainError);
}
