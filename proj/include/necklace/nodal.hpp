#pragma once
#include "necklace/crown.hpp"
#include "necklace/geometry.hpp"

#include <ostream>
#include <vector>

namespace necklace {

struct Box {
    Point3 lo{-2.5, -2.5, -2.5};
    Point3 hi{2.5, 2.5, 2.5};
};

struct NodalMesh {
    std::vector<Point3> points;
    std::vector<double> values;      // profile at each point (the residual)
    std::vector<Point3> gradients;
    Box bbox;
    int resolution = 0;
};

struct RadialRoot {
    double t = 0;      // offset along the direction
    Point3 point;
    double value = 0;
};

// First sign change of the profile along xi_j + t dir, t in [t_lo, t_hi], refined by
// bisection to an interval of width tol. j is 1-based. Throws NotFoundError.
RadialRoot radial_nodal_root(const CrownParams& p, const ProfileHandle& q, int j, Point3 dir,
                             double tol = 1e-12, double t_hi = 0.5);

// Marks grid edges with a sign change and refines each crossing by bisection.
NodalMesh nodal_mesh(const ProfileHandle& q, const Box& bbox, int resolution);

// Central-difference gradient with h = 1e-5 max(1, |z|).
Point3 fd_gradient(const ProfileHandle& q, const Point3& z);

// Minimum gradient norm over the mesh points. Throws DomainError on an empty mesh.
double gradient_min_on_nodal(const NodalMesh& mesh);

void write_mesh_csv(std::ostream& os, const NodalMesh& mesh);
void write_mesh_obj(std::ostream& os, const NodalMesh& mesh);

} // namespace necklace
