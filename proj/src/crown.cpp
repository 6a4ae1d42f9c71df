#include "necklace/crown.hpp"
#include "necklace/errors.hpp"
#include "necklace/summation.hpp"
#include "necklace/trig_sums.hpp"

#include <cmath>
#include <string>

namespace necklace {

namespace {
const double kC = std::pow(3.0, 0.25);
}

CrownParams make_crown(int m)
{
    if (m < 8 || m % 2 != 0)
        throw DomainError("crown: m must be even and >= 8, got " + std::to_string(m));
    CrownParams p;
    p.m = m;
    p.csc_sum = csc_full_sum(m);
    const double lm = std::log(double(m));
    p.d = std::sqrt(2.0) * m * lm / p.csc_sum;
    p.mu = p.d * p.d / (double(m) * m * lm * lm);
    const double rho = std::sqrt(1.0 - p.mu * p.mu);
    p.xi.reserve(m);
    for (int j = 0; j < m; ++j) {
        const double a = 2.0 * j * M_PI / m;
        p.xi.push_back({rho * std::cos(a), rho * std::sin(a), 0.0});
    }
    return p;
}

std::string to_string(ProfileTag t)
{
    switch (t) {
    case ProfileTag::talenti: return "talenti";
    case ProfileTag::u_star: return "u_star";
    case ProfileTag::u_star_corrected: return "u_star_corrected";
    case ProfileTag::custom: return "custom";
    }
    return "?";
}

Point3 ProfileHandle::gradient(const Point3& z) const
{
    if (grad)
        return grad(z);
    const double h = 1e-4 * std::max(1.0, norm(z));
    Point3 g;
    for (int i = 0; i < 3; ++i) {
        Point3 e;
        e[i] = h;
        g[i] = (-value(z + 2 * e) + 8 * value(z + e) - 8 * value(z - e) + value(z - 2 * e)) / (12 * h);
    }
    return g;
}

Mat3 ProfileHandle::hessian(const Point3& z) const
{
    // Central differences of the gradient; symmetrized.
    const double h = 1e-5 * std::max(1.0, norm(z));
    Mat3 H{};
    for (int i = 0; i < 3; ++i) {
        Point3 e;
        e[i] = h;
        const Point3 gp = gradient(z + e), gm = gradient(z - e);
        for (int j = 0; j < 3; ++j)
            H[i][j] = (gp[j] - gm[j]) / (2 * h);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            H[i][j] = H[j][i] = 0.5 * (H[i][j] + H[j][i]);
    return H;
}

double u_bubble(const Point3& z) { return kC / std::sqrt(1.0 + norm2(z)); }

Point3 u_bubble_grad(const Point3& z)
{
    const double s = 1.0 + norm2(z);
    return z * (-kC / (s * std::sqrt(s)));
}

double u_star(const Point3& z, const CrownParams& p)
{
    const double inv_mu = 1.0 / p.mu, amp = 1.0 / std::sqrt(p.mu);
    KahanAccumulator acc;
    acc += u_bubble(z);
    for (const auto& x : p.xi)
        acc += -amp * u_bubble((z - x) * inv_mu);
    return acc.result();
}

Point3 u_star_grad(const Point3& z, const CrownParams& p)
{
    const double inv_mu = 1.0 / p.mu, amp = std::pow(p.mu, -1.5);
    Point3 g = u_bubble_grad(z);
    for (const auto& x : p.xi)
        g += u_bubble_grad((z - x) * inv_mu) * (-amp);
    return g;
}

ProfileHandle talenti_profile()
{
    ProfileHandle h;
    h.value = [](const Point3& z) { return u_bubble(z); };
    h.grad = [](const Point3& z) { return u_bubble_grad(z); };
    h.tag = ProfileTag::talenti;
    return h;
}

ProfileHandle u_star_profile(const CrownParams& p)
{
    ProfileHandle h;
    h.value = [p](const Point3& z) { return u_star(z, p); };
    h.grad = [p](const Point3& z) { return u_star_grad(z, p); };
    h.tag = ProfileTag::u_star;
    for (const auto& x : p.xi)
        h.features.push_back({x, p.mu});
    return h;
}

ProfileHandle u_star_corrected_profile(const CrownParams& p)
{
    ProfileHandle h;
    h.value = [p](const Point3& z) { return u_star(z, p) + psi_d1(z, p).value; };
    h.tag = ProfileTag::u_star_corrected;
    for (const auto& x : p.xi)
        h.features.push_back({x, p.mu});
    return h;
}

double psi_d11(const Point3& z)
{
    const double s = 1.0 + norm2(z);
    // (1 + |z|^2)^2 - 4 z1^2 factored to keep it accurate near the poles
    const double rad = norm2(z - Point3{1, 0, 0}) * norm2(z + Point3{1, 0, 0});
    if (!(rad > 0))
        throw DomainError("psi_d11: pole at (+-1, 0, 0)");
    return -std::sqrt(2.0) / std::sqrt(s) * (8.0 * z.x * z.x - s * s) / (s * std::sqrt(rad));
}

Estimate psi_d1(const Point3& z, const CrownParams& p)
{
    const int m = p.m;
    Estimate e;
    double dmin = 1e300;
    KahanAccumulator acc;
    for (int j = 1; j <= m / 2; ++j) {
        const double a = 2.0 * (j - 1) * M_PI / m;
        const Point3 pj{std::cos(a), std::sin(a), 0.0};
        const double d1 = norm(z - pj), d2 = norm(z + pj);
        dmin = std::min({dmin, d1, d2});
        acc += psi_d11(rotate(z, -a));
        acc += 1.0 / d1;
        acc += 1.0 / d2;
    }
    e.value = kC * std::sqrt(p.mu) * acc.result();
    if (dmin < 1e-6)
        e.warning = "psi_d1: evaluation point within 1e-6 of a pole";
    return e;
}

double psi_d1_mid_closed(const CrownParams& p)
{
    const int m = p.m;
    KahanAccumulator acc;
    for (int j = 1; j <= m / 2; ++j) {
        const double a = 2.0 * (j - 1) * M_PI / m - M_PI / m;
        const double c = std::cos(a);
        acc += (1.0 - 2.0 * c * c) / std::fabs(std::sin(a));
        acc += 1.0 / std::sin((2.0 * j - 1) * M_PI / (2.0 * m));
    }
    return kC * std::sqrt(p.mu) * acc.result();
}

double right1_sum(int m)
{
    KahanAccumulator acc;
    for (int j = 1; j <= m / 2; ++j)
        acc += 2.0 * std::fabs(std::sin(2.0 * (j - 1) * M_PI / m - M_PI / m));
    return acc.result();
}

double right1_closed(int m)
{
    const double s = std::sin(M_PI / m);
    return 2.0 * s + (1.0 - std::cos((m - 2.0) * M_PI / m)) / s;
}

MidValue q_mid_lower(const CrownParams& p)
{
    const int m = p.m;
    const double rho = std::sqrt(1.0 - p.mu * p.mu);
    const double c = std::cos(M_PI / m), s = std::sin(M_PI / m);
    MidValue r;
    r.ustar = u_star({rho * c, rho * s, 0.0}, p);
    r.psi = psi_d1({c, s, 0.0}, p).value;
    r.value = r.ustar + r.psi;
    r.bound = kC * p.d / (2.0 * M_PI * std::log(double(m)));
    return r;
}

CscTermCheck qmiddle_term_check(int m)
{
    if (m < 8 || m % 2 != 0)
        throw DomainError("qmiddle_term_check: m must be even and >= 8");
    CscTermCheck c;
    for (int j = 1; 4 * j <= m - 2; ++j) {
        ++c.checked_terms;
        if (1.0 / std::sin(2.0 * j * M_PI / m) < 1.0 / std::sin((m - 2.0 * j - 1) * M_PI / m))
            c.termwise_ok = false;
    }
    KahanAccumulator lhs;
    for (int j = 1; j <= m / 2; ++j) {
        lhs += 1.0 / std::sin(j * M_PI / m);
        lhs += -1.0 / std::fabs(std::sin((2.0 * j - 3) * M_PI / m));
    }
    c.aggregate_lhs = lhs.result();
    c.aggregate_rhs = -1.0 / std::sin(M_PI / m);
    c.aggregate_ok = c.aggregate_lhs >= c.aggregate_rhs;
    return c;
}

HParam h_param(const Point3& z, const CrownParams& p)
{
    const double r = std::hypot(z.x, z.y);
    if (r == 0.0)
        throw DomainError("h_param: r = 0");
    const double rho = std::sqrt(1.0 - p.mu * p.mu);
    const double dr = r - rho;
    return {std::sqrt((dr * dr + z.z * z.z) / (4.0 * r * rho)), r, std::atan2(z.y, z.x)};
}

double normal_angle(const ProfileHandle& q, const Point3& xi)
{
    const Point3 g = q.gradient(xi);
    return std::atan2(g.y, g.x);
}

double kernel_z(int j, const Point3& y, const ProfileHandle& q, const Point3& xi, double theta_star)
{
    if (j < 0 || j > 5)
        throw DomainError("kernel_z: j must be in 0..5");
    const double r2 = norm2(y);
    if (r2 == 0.0)
        throw DomainError("kernel_z: y = 0");
    const double r = std::sqrt(r2), r3 = r2 * r;
    const Point3 P = rotate(y / r2, theta_star) + xi;
    const double qv = q(P);
    const Point3 g = rotate(q.gradient(P), -theta_star);  // R^T grad q
    switch (j) {
    case 0: return qv / (2 * r) + dot(g, y) / r3;
    case 1: return g.x / r;
    case 2: return g.y / r;
    case 3: return y.x * qv / r3 - g.x / r3 + 2 * y.x * dot(g, y) / (r3 * r2);
    case 4: return y.y * qv / r3 - g.y / r3 + 2 * y.y * dot(g, y) / (r3 * r2);
    default: return (-y.y * g.x + y.x * g.y) / r3;
    }
}

double fd_laplacian(const std::function<double(const Point3&)>& f, const Point3& z, double h)
{
    const double c = f(z);
    double s = -6.0 * c;
    for (int i = 0; i < 3; ++i) {
        Point3 e;
        e[i] = h;
        s += f(z + e) + f(z - e);
    }
    return s / (h * h);
}

} // namespace necklace
