#include "necklace/kernels.hpp"
#include "necklace/errors.hpp"
#include "necklace/summation.hpp"
#include "necklace/trig_sums.hpp"

#include <cmath>

namespace necklace {

Point3 PlacedBubble::b() const
{
    return {b_norm * std::cos(alpha_b), b_norm * std::sin(alpha_b), 0.0};
}

Point3 PlacedBubble::w() const
{
    return {w_norm * std::cos(alpha_w), w_norm * std::sin(alpha_w), 0.0};
}

double PlacedBubble::d() const { return (1.0 - b_norm * b_norm) / (2.0 * b_norm); }

Point3 PlacedBubble::xi_hat() const
{
    return xi + Point3{std::cos(theta_star), std::sin(theta_star), 0.0} * a;
}

PlacedBubble place_bubble(const ProfileHandle& q, const Point3& xi, double eps, double a,
                          double b_norm, double alpha_b, double beta_hat)
{
    PlacedBubble A;
    A.eps = eps;
    A.a = a;
    A.b_norm = b_norm;
    A.alpha_b = alpha_b;
    A.beta_hat = beta_hat;
    A.profile = q;
    A.xi = xi;
    A.theta_star = normal_angle(q, xi);
    const Point3 xh = A.xi_hat();
    A.q_hat = q(xh);
    const Point3 w = rotate(q.gradient(xh), -A.beta());
    A.w_norm = std::hypot(w.x, w.y);
    A.alpha_w = std::atan2(w.y, w.x);
    // W = R^T H R
    const Mat3 H = q.hessian(xh);
    const double c = std::cos(A.beta()), s = std::sin(A.beta());
    const double R[3][3] = {{c, -s, 0}, {s, c, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    v += R[k][i] * H[k][l] * R[l][j];
            A.W[i][j] = v;
        }
    return A;
}

std::vector<Image> gamma_images(const Point3& z, const SectorConfig& s)
{
    std::vector<Image> out;
    out.reserve(s.K);
    const Point3 zb = conj(z);
    for (int j = 0; j < s.K / 2; ++j)
        out.push_back({rotate(zb, (4 * j + 2) * s.theta0), +1.0});
    for (int j = 1; j < s.K / 2; ++j)
        out.push_back({rotate(z, 4 * j * s.theta0), -1.0});
    return out;
}

double gamma_direct(const Point3& z, const Point3& p, const SectorConfig& s)
{
    KahanAccumulator acc;
    for (const auto& im : gamma_images(z, s))
        acc += im.sign / norm(im.y - p);
    return acc.result();
}

double h0(const Point3& z, const Point3& p)
{
    const double r = 1.0 - 2.0 * dot(z, p) + norm2(z) * norm2(p);
    if (!(r > 0))
        throw DomainError("h0: nonpositive radicand");
    return 1.0 / std::sqrt(r);
}

double h0e(const Point3& z, const Point3& p, const SectorConfig& s)
{
    KahanAccumulator acc;
    const Point3 zb = conj(z);
    for (int j = 0; j < s.K / 2; ++j) {
        acc += h0(rotate(z, 4 * j * s.theta0), p);
        acc += -h0(rotate(zb, (4 * j + 2) * s.theta0), p);
    }
    return acc.result();
}

namespace {

void check_bb(double b_norm, double alpha_b, const SectorConfig& s)
{
    if (!(b_norm > 0.5) || !(b_norm < 1.0))
        throw PreconditionError("kernel at (b, b): need 1/2 < |b| < 1");
    if (!(std::fabs(alpha_b) < 0.5 * s.theta0))
        throw PreconditionError("kernel at (b, b): need |alpha_b| < theta0 / 2");
}

Point3 polar(double r, double a) { return {r * std::cos(a), r * std::sin(a), 0.0}; }

KernelReport finish(double direct, double closed, double asym)
{
    KernelReport r;
    r.direct = direct;
    r.closed_form = closed;
    r.asymptotic = asym;
    r.abs_err_dc = std::fabs(direct - closed);
    r.abs_err_ca = std::fabs(closed - asym);
    return r;
}

double bb_d(double b) { return (1.0 - b * b) / (2.0 * b); }

} // namespace

double gamma_bb_closed(double b_norm, double alpha_b, const SectorConfig& s)
{
    const double t0 = s.theta0;
    KahanAccumulator acc;
    for (int j = 0; j < s.K / 2; ++j)
        acc += 1.0 / std::sin((2 * j + 1) * t0 - alpha_b);
    for (int j = 1; j < s.K / 2; ++j)
        acc += -1.0 / std::sin(2 * j * t0);
    return acc.result() / (2.0 * b_norm);
}

KernelReport gamma_bb(double b_norm, double alpha_b, const SectorConfig& s)
{
    check_bb(b_norm, alpha_b, s);
    const Point3 b = polar(b_norm, alpha_b);
    return finish(gamma_direct(b, b, s), gamma_bb_closed(b_norm, alpha_b, s),
                  s_alt_hat(1, s.K) / (2.0 * b_norm));
}

double h0e_bb_closed(double b_norm, double alpha_b, const SectorConfig& s)
{
    const double t0 = s.theta0, d = bb_d(b_norm), d2 = d * d;
    KahanAccumulator acc;
    for (int j = 0; j < s.K / 2; ++j) {
        const double se = std::sin(2 * j * t0), so = std::sin((2 * j + 1) * t0 - alpha_b);
        acc += 1.0 / std::sqrt(d2 + se * se);
        acc += -1.0 / std::sqrt(d2 + so * so);
    }
    return acc.result() / (2.0 * b_norm);
}

KernelReport h0e_bb(double b_norm, double alpha_b, const SectorConfig& s)
{
    check_bb(b_norm, alpha_b, s);
    const Point3 b = polar(b_norm, alpha_b);
    return finish(h0e(b, b, s), h0e_bb_closed(b_norm, alpha_b, s),
                  s_alt(1, s.K, bb_d(b_norm)) / (2.0 * b_norm));
}

double grad_closed(KernelKind kind, Slot slot, const PlacedBubble& A, const SectorConfig& s)
{
    const double t0 = s.theta0, aw = A.alpha_w, ab = A.alpha_b, bn = A.b_norm;
    const double sg = slot == Slot::z ? 1.0 : -1.0;
    KahanAccumulator i1, i2;
    if (kind == KernelKind::gamma) {
        for (int j = 1; j < s.K / 2; ++j) {
            const double se = std::sin(2 * j * t0);
            i1 += std::sin(2 * j * t0 + sg * (aw - ab)) / (se * se);
        }
        for (int j = 0; j < s.K / 2; ++j) {
            const double so = std::sin((2 * j + 1) * t0 - ab);
            i2 += std::sin((2 * j + 1) * t0 - aw) / (so * so);
        }
        return A.w_norm / (4 * bn * bn) * (i1.result() - i2.result());
    }
    const double d = A.d(), d2 = d * d, b2c = bn * bn * std::cos(aw - ab);
    for (int j = 0; j < s.K / 2; ++j) {
        const double se = std::sin(2 * j * t0), so = std::sin((2 * j + 1) * t0 - ab);
        i1 += (std::cos(4 * j * t0 + sg * (aw - ab)) - b2c) / std::pow(d2 + se * se, 1.5);
        i2 += (std::cos((4 * j + 2) * t0 - aw - ab) - b2c) / std::pow(d2 + so * so, 1.5);
    }
    return A.w_norm / (8 * bn * bn) * (i1.result() - i2.result());
}

double hess_closed(KernelKind kind, const PlacedBubble& A, const SectorConfig& s)
{
    const double t0 = s.theta0, aw = A.alpha_w, ab = A.alpha_b, bn = A.b_norm;
    const double pref = A.w_norm * A.w_norm / (8 * bn * bn * bn);
    KahanAccumulator i1, i2;
    if (kind == KernelKind::gamma) {
        for (int j = 0; j < s.K / 2; ++j) {
            const double so = std::sin((2 * j + 1) * t0 - ab);
            i1 += (3.0 - std::cos((4 * j + 2) * t0 - 2 * aw)) / (2 * so * so * so);
        }
        for (int j = 1; j < s.K / 2; ++j) {
            const double se = std::sin(2 * j * t0);
            i2 += (-std::cos(4 * j * t0) + 3 * std::cos(2 * (ab - aw))) / (2 * se * se * se);
        }
        return pref * (i1.result() - i2.result());
    }
    const double d = A.d(), d2 = d * d, b2 = bn * bn;
    const double al = ab - aw, ca = std::cos(al);
    for (int j = 0; j < s.K / 2; ++j) {
        const double th = 4 * j * t0;
        const double se = std::sin(2 * j * t0), E = d2 + se * se;
        const double st = std::sin(th);
        i1 += (std::cos(th) + b2 * ca * ca) / std::pow(E, 1.5);
        i1 += -3.0 * st * st / (4.0 * std::pow(E, 2.5));

        const double tr = (4 * j + 2) * t0;
        const double so = std::sin(0.5 * tr - ab), F = d2 + so * so;
        const double u = std::cos(tr - ab - aw) - b2 * ca;
        i2 += (std::cos(tr - 2 * aw) - 2 * b2 * ca * ca) / std::pow(F, 1.5);
        i2 += 3.0 * u * u / (4.0 * std::pow(F, 2.5));
    }
    return pref * (i1.result() - i2.result());
}

std::array<std::array<double, 2>, 2> a_gamma(int K)
{
    const double s1o = s_odd(1, K, 0), s3o = s_odd(3, K, 0), s5o = s_odd(5, K, 0);
    const double s3e = s_even_hat(3, K, 0);
    const double a12 = -3.0 * (s3o + s3e) + 3.0 * s1o;
    return {{{s3o - 2 * s1o + 3 * s3e, a12}, {a12, 1.5 * (4 * s5o + s3o - 3 * s1o) + 3 * s3e}}};
}

namespace {

double kernel_eval(KernelKind kind, const Point3& z, const Point3& p, const SectorConfig& s)
{
    return kind == KernelKind::gamma ? gamma_direct(z, p, s) : h0e(z, p, s);
}

double grad_asym(KernelKind kind, const PlacedBubble& A, const SectorConfig& s)
{
    const double bn = A.b_norm;
    if (kind == KernelKind::gamma)
        return -s_alt_hat(1, s.K) * A.w_norm / (4 * bn * bn);
    const double d = A.d();
    return A.w_norm / (4 * bn * bn) * (-s_alt(1, s.K, d) + d * std::sqrt(1 + d * d) * s_alt(3, s.K, d));
}

double hess_asym(KernelKind kind, const PlacedBubble& A, const SectorConfig& s)
{
    const double bn = A.b_norm;
    const double pref = A.w_norm * A.w_norm / (8 * bn * bn * bn);
    if (kind == KernelKind::gamma) {
        const auto M = a_gamma(s.K);
        const double aw = A.alpha_w, ab = A.alpha_b;
        const double quad = M[0][0] * aw * aw + 2 * M[0][1] * aw * ab + M[1][1] * ab * ab;
        return pref * (s_alt_hat(1, s.K) + s_alt_hat(3, s.K) + quad);
    }
    const double d = A.d(), e = d + std::sqrt(1 + d * d);
    return pref * (s_alt(1, s.K, d) - e * e * s_alt(3, s.K, d) + 3 * (d * d + d * d * d * d) * s_alt(5, s.K, d));
}

} // namespace

KernelReport kernel_grad(KernelKind kind, Slot slot, const PlacedBubble& A, const KernelConfig& cfg)
{
    const SectorConfig& s = cfg.sector;
    check_bb(A.b_norm, A.alpha_b, s);
    const Point3 b = A.b();
    const Point3 u{std::cos(A.alpha_w), std::sin(A.alpha_w), 0.0};
    auto f = [&](double t) {
        return slot == Slot::z ? kernel_eval(kind, b + u * t, b, s) : kernel_eval(kind, b, b + u * t, s);
    };
    auto D = [&](double h) { return A.w_norm * (f(h) - f(-h)) / (2 * h); };
    const double h = cfg.fd_step_grad;
    const double closed = grad_closed(kind, slot, A, s);
    KernelReport r = finish(D(h), closed, grad_asym(kind, A, s));
    if (r.abs_err_dc > cfg.tol_grad) {
        r.direct = (4 * D(0.5 * h) - D(h)) / 3;
        r.abs_err_dc = std::fabs(r.direct - closed);
        r.richardson = true;
    }
    return r;
}

KernelReport kernel_hess(KernelKind kind, const PlacedBubble& A, const KernelConfig& cfg)
{
    const SectorConfig& s = cfg.sector;
    check_bb(A.b_norm, A.alpha_b, s);
    const Point3 b = A.b();
    const Point3 u{std::cos(A.alpha_w), std::sin(A.alpha_w), 0.0};
    auto f = [&](double sz, double sp) { return kernel_eval(kind, b + u * sz, b + u * sp, s); };
    auto D = [&](double h) {
        return A.w_norm * A.w_norm * (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    };
    const double h = cfg.fd_step_hess;
    const double closed = hess_closed(kind, A, s);
    KernelReport r = finish(D(h), closed, hess_asym(kind, A, s));
    if (r.abs_err_dc > cfg.tol_hess) {
        r.direct = (4 * D(0.5 * h) - D(h)) / 3;
        r.abs_err_dc = std::fabs(r.direct - closed);
        r.richardson = true;
    }
    return r;
}

double q_a(const Point3& z, const PlacedBubble& A)
{
    if (!A.profile.value)
        throw PreconditionError("q_a: bubble has no profile attached");
    const Point3 y = z - A.b();
    const double r2 = norm2(y);
    if (r2 == 0.0)
        throw DomainError("q_a: z = b");
    const Point3 P = rotate(y * (A.eps / r2), A.beta()) + A.xi_hat();
    return std::sqrt(A.eps / r2) * A.profile(P);
}

double q_a_expansion(const Point3& z, const PlacedBubble& A)
{
    const Point3 y = z - A.b();
    const double r2 = norm2(y);
    if (r2 == 0.0)
        throw DomainError("q_a_expansion: z = b");
    double yWy = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            yWy += y[i] * A.W[i][j] * y[j];
    const double e = A.eps;
    return std::sqrt(e / r2) * (A.q_hat + e * dot(A.w(), y) / r2 + e * e * yWy / (2 * r2 * r2));
}

KernelReport t_a(const Point3& z, const PlacedBubble& A, const SectorConfig& s)
{
    const Point3 b = A.b(), w = A.w();
    KahanAccumulator dir, ex, g0, g1, g2;
    const bool have_profile = static_cast<bool>(A.profile.value);
    for (const auto& im : gamma_images(z, s)) {
        if (have_profile)
            dir += im.sign * q_a(im.y, A);
        ex += im.sign * q_a_expansion(im.y, A);
        const Point3 u = im.y - b;
        const double r2 = norm2(u), r = std::sqrt(r2), r3 = r2 * r, r5 = r3 * r2;
        g0 += im.sign / r;
        g1 += im.sign * dot(w, u) / r3;
        double WH = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                WH += A.W[i][j] * ((i == j ? -1.0 / r3 : 0.0) + 3 * u[i] * u[j] / r5);
        g2 += im.sign * WH;
    }
    const double e = A.eps, se = std::sqrt(e);
    const double asym = se * A.q_hat * g0.result() + e * se * g1.result() + e * e * se * g2.result() / 6.0;
    return finish(have_profile ? dir.result() : ex.result(), ex.result(), asym);
}

} // namespace necklace
