#include "necklace/nodal.hpp"
#include "necklace/errors.hpp"
#include "necklace/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace necklace {

namespace {

// Bisection on [a, b] with f(a) f(b) < 0. Returns the endpoint with the smaller |f|.
Point3 bisect(const ProfileHandle& q, Point3 a, double fa, Point3 b, double fb, double* fout)
{
    for (int it = 0; it < 200; ++it) {
        const Point3 c = (a + b) * 0.5;
        if (norm2(b - a) < 1e-30)
            break;
        const double fc = q(c);
        if (fc == 0.0) {
            a = b = c;
            fa = fb = 0.0;
            break;
        }
        if ((fc < 0) == (fa < 0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
        if (std::fabs(fa) < 1e-14 || std::fabs(fb) < 1e-14)
            break;
    }
    if (std::fabs(fa) <= std::fabs(fb)) {
        *fout = fa;
        return a;
    }
    *fout = fb;
    return b;
}

} // namespace

RadialRoot radial_nodal_root(const CrownParams& p, const ProfileHandle& q, int j, Point3 dir,
                             double tol, double t_hi)
{
    if (j < 1 || j > p.m)
        throw DomainError("radial_nodal_root: j out of range");
    const double dn = norm(dir);
    if (dn == 0.0)
        throw DomainError("radial_nodal_root: zero direction");
    dir = dir / dn;
    const Point3 x0 = p.xi[j - 1];
    auto f = [&](double t) { return q(x0 + dir * t); };
    const double t_lo = 1e-3 / p.m;
    if (!(t_hi > t_lo))
        throw DomainError("radial_nodal_root: empty bracket");
    constexpr int N = 400;
    const double ratio = std::pow(t_hi / t_lo, 1.0 / N);
    double ta = t_lo, fa = f(ta);
    for (int i = 1; i <= N; ++i) {
        const double tb = i == N ? t_hi : t_lo * std::pow(ratio, i);
        const double fb = f(tb);
        if ((fa < 0) != (fb < 0) || fb == 0.0) {
            double lo = ta, hi = tb, flo = fa;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            RadialRoot r;
            r.t = 0.5 * (lo + hi);
            r.point = x0 + dir * r.t;
            r.value = q(r.point);
            return r;
        }
        ta = tb;
        fa = fb;
    }
    throw NotFoundError("radial_nodal_root: no sign change in [" + std::to_string(t_lo) + ", " +
                        std::to_string(t_hi) + "]");
}

Point3 fd_gradient(const ProfileHandle& q, const Point3& z)
{
    const double h = 1e-5 * std::max(1.0, norm(z));
    Point3 g;
    for (int i = 0; i < 3; ++i) {
        Point3 e;
        e[i] = h;
        g[i] = (q(z + e) - q(z - e)) / (2 * h);
    }
    return g;
}

NodalMesh nodal_mesh(const ProfileHandle& q, const Box& bbox, int resolution)
{
    if (resolution < 16)
        throw DomainError("nodal_mesh: resolution must be >= 16");
    const int n = resolution + 1;
    const Point3 step = (bbox.hi - bbox.lo) / double(resolution);
    auto node = [&](int i, int j, int k) {
        return Point3{bbox.lo.x + i * step.x, bbox.lo.y + j * step.y, bbox.lo.z + k * step.z};
    };
    auto idx = [n](int i, int j, int k) { return (std::size_t(i) * n + j) * n + k; };

    std::vector<double> grid(std::size_t(n) * n * n);
    parallel_for(n, [&](std::size_t i) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                grid[idx(int(i), j, k)] = q(node(int(i), j, k));
    });

    // One bucket per x-slab, merged in slab order.
    std::vector<NodalMesh> slabs(n);
    parallel_for(n, [&](std::size_t si) {
        const int i = int(si);
        NodalMesh& out = slabs[si];
        auto edge = [&](int i0, int j0, int k0, int i1, int j1, int k1) {
            const double fa = grid[idx(i0, j0, k0)], fb = grid[idx(i1, j1, k1)];
            if (!((fa < 0) != (fb < 0)))
                return;
            double fv = 0;
            const Point3 p = bisect(q, node(i0, j0, k0), fa, node(i1, j1, k1), fb, &fv);
            out.points.push_back(p);
            out.values.push_back(fv);
            out.gradients.push_back(fd_gradient(q, p));
        };
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i + 1 < n) edge(i, j, k, i + 1, j, k);
                if (j + 1 < n) edge(i, j, k, i, j + 1, k);
                if (k + 1 < n) edge(i, j, k, i, j, k + 1);
            }
    });

    NodalMesh mesh;
    mesh.bbox = bbox;
    mesh.resolution = resolution;
    for (auto& s : slabs) {
        mesh.points.insert(mesh.points.end(), s.points.begin(), s.points.end());
        mesh.values.insert(mesh.values.end(), s.values.begin(), s.values.end());
        mesh.gradients.insert(mesh.gradients.end(), s.gradients.begin(), s.gradients.end());
    }
    return mesh;
}

double gradient_min_on_nodal(const NodalMesh& mesh)
{
    if (mesh.points.empty())
        throw DomainError("gradient_min_on_nodal: empty nodal mesh");
    double g = INFINITY;
    for (const auto& v : mesh.gradients)
        g = std::min(g, norm(v));
    return g;
}

void write_mesh_csv(std::ostream& os, const NodalMesh& mesh)
{
    os << "x,y,z,residual,gradnorm\n";
    char buf[160];
    for (std::size_t i = 0; i < mesh.points.size(); ++i) {
        const auto& p = mesh.points[i];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.x, p.y, p.z,
                      std::fabs(mesh.values[i]), norm(mesh.gradients[i]));
        os << buf;
    }
}

void write_mesh_obj(std::ostream& os, const NodalMesh& mesh)
{
    os << "# nodal set vertices\n";
    char buf[128];
    for (const auto& p : mesh.points) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
        os << buf;
    }
}

} // namespace necklace
