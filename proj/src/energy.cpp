#include "necklace/energy.hpp"
#include "necklace/errors.hpp"
#include "necklace/nodal.hpp"
#include "necklace/parallel.hpp"
#include "necklace/summation.hpp"
#include "necklace/trig_sums.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace necklace {

ConstraintBox constraint_box(const ReducedConfig& cfg)
{
    if (cfg.K < 8 || cfg.K % 2 != 0)
        throw DomainError("constraint box: K must be even and >= 8");
    if (!(cfg.delta > 0 && cfg.delta < 1))
        throw DomainError("constraint box: delta must lie in (0, 1)");
    const double K = cfg.K, lk = std::log(K), llk = std::log(lk), K3 = K * K * K;
    ConstraintBox b;
    b.eps_lo = cfg.delta / K3;
    b.eps_hi = 1.0 / (cfg.delta * K3);
    b.d_lo = (lk - llk) / K;
    b.d_hi = lk / K;
    b.alpha_b_max = lk / (std::sqrt(cfg.delta) * K * K);
    b.alpha_w_max = lk / (std::sqrt(cfg.delta) * K);
    b.a_coef = lk / cfg.delta;
    return b;
}

namespace {

double integrate_pieces(const std::function<double(double)>& f, std::vector<double> pts,
                        const QuadratureConfig& cfg)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    KahanAccumulator acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] > pts[i])
            acc += integrate(f, pts[i], pts[i + 1], cfg);
    return acc.result();
}

struct FeaturePolar {
    double R, u, phi, scale;
};

constexpr double kMul[] = {0.0, 1.0, 4.0, 16.0, 64.0};

// Integral over S^2 (normalized by 4 pi) of g(q(center + r omega)).
double sphere_mean(const ProfileHandle& q, const Point3& center, double r,
                   const std::vector<FeaturePolar>& feats, const std::function<double(double)>& g,
                   const QuadratureConfig& cfg)
{
    std::vector<double> ubreak{-1.0, 0.0, 1.0};
    for (const auto& f : feats) {
        const double gap = std::fabs(r - f.R);
        if (gap > 64 * f.scale + 0.05 * r)
            continue;
        const double sin_c = std::sqrt(std::max(0.0, 1 - f.u * f.u));
        const double w = std::max(f.scale, gap) / r * std::max(sin_c, 1e-3);
        for (double k : kMul)
            for (double sg : {-1.0, 1.0}) {
                const double u = f.u + sg * k * w;
                if (u > -1 && u < 1)
                    ubreak.push_back(u);
            }
    }
    auto over_u = [&](double u) {
        const double s = std::sqrt(std::max(0.0, 1 - u * u));
        std::vector<double> pb{0.0, M_PI, 2 * M_PI};
        for (const auto& f : feats) {
            const Point3 on{r * s * std::cos(f.phi), r * s * std::sin(f.phi), r * u};
            const double sin_c = std::sqrt(std::max(0.0, 1 - f.u * f.u));
            const Point3 fc{f.R * sin_c * std::cos(f.phi), f.R * sin_c * std::sin(f.phi), f.R * f.u};
            const double dmin = norm(on - fc);
            if (dmin > 64 * f.scale + 0.05 * r || r * s < 1e-12)
                continue;
            const double w = std::max(f.scale, dmin) / (r * s);
            for (double k : kMul)
                for (double sg : {-1.0, 1.0}) {
                    double p = f.phi + sg * k * w;
                    if (k * w >= M_PI)
                        continue;
                    p = std::fmod(p + 4 * M_PI, 2 * M_PI);
                    pb.push_back(p);
                }
        }
        return integrate_pieces([&](double ph) {
            const Point3 om{s * std::cos(ph), s * std::sin(ph), u};
            return g(q(center + om * r));
        }, pb, cfg);
    };
    return integrate_pieces(over_u, ubreak, cfg) / (4 * M_PI);
}

ShellIntegral shell_integral(const ProfileHandle& q, const Point3& center,
                             const std::function<double(double)>& g,
                             const std::function<double(double)>& radial_weight, double rel_tol)
{
    std::vector<FeaturePolar> feats;
    for (const auto& f : q.features) {
        const Point3 v = f.center - center;
        const double R = norm(v);
        if (R == 0)
            continue;
        feats.push_back({R, v.z / R, std::atan2(v.y, v.x) < 0 ? std::atan2(v.y, v.x) + 2 * M_PI
                                                              : std::atan2(v.y, v.x),
                         f.scale});
    }
    QuadratureConfig inner;
    inner.abs_tol = 1e-300;
    inner.rel_tol = 0.1 * rel_tol;
    inner.max_subdivisions = 4000;
    QuadratureConfig outer = inner;
    outer.rel_tol = rel_tol;

    auto F = [&](double r) { return radial_weight(r) * sphere_mean(q, center, r, feats, g, inner); };

    ShellIntegral out;
    std::vector<double> rb{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0, 100.0, out.r_max};
    for (const auto& f : feats)
        for (double k : kMul)
            for (double sg : {-1.0, 1.0}) {
                const double r = f.R + sg * k * f.scale;
                if (r > 0 && r < out.r_max)
                    rb.push_back(r);
            }
    // The radial pieces are independent; evaluate them in parallel and sum in order.
    std::sort(rb.begin(), rb.end());
    rb.erase(std::unique(rb.begin(), rb.end()), rb.end());
    std::vector<double> parts(rb.size() - 1, 0.0);
    parallel_for(parts.size(), [&](std::size_t i) { parts[i] = integrate(F, rb[i], rb[i + 1], outer); });
    KahanAccumulator acc;
    for (double v : parts)
        acc += v;
    out.tail = integrate(F, out.r_max, kInf, outer);
    acc += out.tail;
    out.total = acc.result();
    return out;
}

} // namespace

ShellIntegral c_star_report(const ProfileHandle& q, const Point3& xi, double rel_tol)
{
    if (std::fabs(q(xi)) > 1e-8)
        throw PreconditionError("c_star: xi is not on the nodal set (|q(xi)| > 1e-8)");
    // shell measure r^2 cancels two powers of |z|^-4; the 4 pi is absorbed by sphere_mean.
    return shell_integral(q, xi, [](double v) { return v * v; },
                          [](double r) { return 1.0 / (r * r); }, rel_tol);
}

double c_star(const ProfileHandle& q, const Point3& xi, double rel_tol)
{
    return c_star_report(q, xi, rel_tol).total;
}

double q6_integral(const ProfileHandle& q, double rel_tol)
{
    const double v = shell_integral(q, {0, 0, 0}, [](double x) { return std::pow(x, 6); },
                                    [](double r) { return r * r; }, rel_tol).total;
    return 4 * M_PI * v;
}

double c0(int K, double d) { return s_alt_hat(1, K) + s_alt(1, K, d); }

double c2(int K, double d)
{
    const double e = d + std::sqrt(1 + d * d);
    return s_alt_hat(1, K) + s_alt_hat(3, K) + s_alt(1, K, d) - e * e * s_alt(3, K, d) +
           3 * (d * d + d * d * d * d) * s_alt(5, K, d);
}

Mat2 a_gamma_matrix(int K) { return a_gamma(K); }

Mat2 a_gamma_rescaled(int K)
{
    Mat2 M = a_gamma(K);
    M[0][1] /= K;
    M[1][0] /= K;
    M[1][1] /= double(K) * K;
    return M;
}

double min_eigenvalue(const Mat2& M)
{
    const double tr = M[0][0] + M[1][1];
    const double det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    return 0.5 * tr - std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
}

PsiMode parse_mode(const std::string& s)
{
    if (s == "leading") return PsiMode::leading;
    if (s == "full") return PsiMode::full;
    throw DomainError("unknown energy mode '" + s + "'");
}

std::string to_string(PsiMode m) { return m == PsiMode::leading ? "leading" : "full"; }

namespace {

// Memo for sums that depend only on (K, d); the minimizer revisits grid values.
struct SumCache {
    std::mutex mu;
    std::map<std::pair<int, double>, std::pair<double, double>> c0c2;
    std::map<int, Mat2> ag;
};
SumCache& cache()
{
    static SumCache c;
    return c;
}

std::pair<double, double> c0c2_cached(int K, double d)
{
    auto& c = cache();
    {
        std::lock_guard<std::mutex> lk(c.mu);
        auto it = c.c0c2.find({K, d});
        if (it != c.c0c2.end())
            return it->second;
    }
    const std::pair<double, double> v{c0(K, d), c2(K, d)};
    std::lock_guard<std::mutex> lk(c.mu);
    c.c0c2[{K, d}] = v;
    return v;
}

Mat2 ag_cached(int K)
{
    auto& c = cache();
    {
        std::lock_guard<std::mutex> lk(c.mu);
        auto it = c.ag.find(K);
        if (it != c.ag.end())
            return it->second;
    }
    const Mat2 v = a_gamma(K);
    std::lock_guard<std::mutex> lk(c.mu);
    c.ag[K] = v;
    return v;
}

} // namespace

double psi_full(const ReducedPoint& A, const ReducedConfig& cfg)
{
    const SectorConfig s = make_sector(cfg.K);
    PlacedBubble B;
    B.eps = A.eps;
    B.a = A.a;
    B.b_norm = b_from_d(A.d);
    B.alpha_b = A.alpha_b;
    B.w_norm = cfg.gnorm;
    B.alpha_w = A.alpha_w;
    const double qh = A.a * cfg.gnorm;
    const double H = gamma_bb_closed(B.b_norm, B.alpha_b, s) + h0e_bb_closed(B.b_norm, B.alpha_b, s);
    const double G = grad_closed(KernelKind::gamma, Slot::z, B, s) + grad_closed(KernelKind::gamma, Slot::p, B, s) +
                     grad_closed(KernelKind::h0e, Slot::z, B, s) + grad_closed(KernelKind::h0e, Slot::p, B, s);
    const double W = hess_closed(KernelKind::gamma, B, s) + hess_closed(KernelKind::h0e, B, s);
    const double e = A.eps;
    return e * qh * qh * H + e * e * qh * G + e * e * e * W - cfg.lambda * e * e * cfg.cstar;
}

double psi_leading(const ReducedPoint& A, const ReducedConfig& cfg)
{
    const double b = b_from_d(A.d), b3 = b * b * b;
    const auto [C0, C2] = c0c2_cached(cfg.K, A.d);
    const Mat2 M = ag_cached(cfg.K);
    const double g = cfg.gnorm, e = A.eps, qh = A.a * g;
    const double quad = M[0][0] * A.alpha_w * A.alpha_w + 2 * M[0][1] * A.alpha_w * A.alpha_b +
                        M[1][1] * A.alpha_b * A.alpha_b;
    return e * qh * qh * C0 / (2 * b) + e * e * e * g * g * (C2 + quad) / (8 * b3) -
           cfg.lambda * e * e * cfg.cstar;
}

double psi(const ReducedPoint& A, const ReducedConfig& cfg, PsiMode mode)
{
    return mode == PsiMode::leading ? psi_leading(A, cfg) : psi_full(A, cfg);
}

double eps_star(double d, const ReducedConfig& cfg)
{
    const double b = b_from_d(d);
    const double C2 = c0c2_cached(cfg.K, d).second;
    return 16 * b * b * b * cfg.lambda * cfg.cstar / (3 * cfg.gnorm * cfg.gnorm * C2);
}

namespace {

struct Mapper {
    ConstraintBox box;
    ReducedPoint operator()(const std::array<double, 5>& x) const
    {
        ReducedPoint A;
        A.eps = box.eps_lo * std::pow(box.eps_hi / box.eps_lo, x[0]);
        A.a = (2 * x[1] - 1) * box.a_max(A.eps);
        A.d = box.d_lo + x[2] * (box.d_hi - box.d_lo);
        A.alpha_b = (2 * x[3] - 1) * box.alpha_b_max;
        A.alpha_w = (2 * x[4] - 1) * box.alpha_w_max;
        return A;
    }
};

} // namespace

MinimizeResult minimize_psi(const ReducedConfig& cfg, PsiMode mode, int grid_points)
{
    if (grid_points < 9)
        throw DomainError("minimize_psi: need at least 9 grid points per axis");
    if (!(cfg.gnorm > 0) || !(cfg.cstar > 0) || !(cfg.lambda > 0))
        throw DomainError("minimize_psi: gnorm, cstar and lambda must be positive");
    const Mapper map{constraint_box(cfg)};
    MinimizeResult res;
    auto f = [&](const std::array<double, 5>& x) {
        ++res.evaluations;
        return psi(map(x), cfg, mode);
    };

    const int n = grid_points;
    // Precompute the d-dependent sums serially so the parallel stage only reads the cache.
    for (int i = 0; i < n; ++i)
        c0c2_cached(cfg.K, map({0, 0, double(i) / (n - 1), 0, 0}).d);
    ag_cached(cfg.K);

    std::size_t total = 1;
    for (int i = 0; i < 5; ++i)
        total *= n;
    std::vector<double> vals(total);
    parallel_for(n, [&](std::size_t i0) {
        const std::size_t per = total / n;
        for (std::size_t r = 0; r < per; ++r) {
            std::size_t idx = r;
            std::array<double, 5> x;
            x[0] = double(i0) / (n - 1);
            for (int ax = 4; ax >= 1; --ax) {
                x[ax] = double(idx % n) / (n - 1);
                idx /= n;
            }
            vals[i0 * per + r] = psi(map(x), cfg, mode);
        }
    });
    res.evaluations += int(total);
    std::size_t best = 0;
    for (std::size_t i = 1; i < total; ++i)
        if (vals[i] < vals[best])
            best = i;
    std::array<double, 5> x;
    {
        std::size_t idx = best;
        for (int ax = 4; ax >= 0; --ax) {
            x[ax] = double(idx % n) / (n - 1);
            idx /= n;
        }
    }
    double fx = vals[best];

    // Coordinate-wise golden section in a one-cell bracket around the current point.
    const double tol = 1e-4, gr = 0.5 * (std::sqrt(5.0) - 1);
    for (int cycle = 0; cycle < 40; ++cycle) {
        const double before = fx;
        for (int ax = 0; ax < 5; ++ax) {
            const double h = 1.0 / (n - 1);
            double lo = std::max(0.0, x[ax] - h), hi = std::min(1.0, x[ax] + h);
            auto at = [&](double t) {
                auto y = x;
                y[ax] = t;
                return f(y);
            };
            double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
            double fc = at(c), fd = at(d);
            while (hi - lo > tol) {
                if (fc < fd) {
                    hi = d; d = c; fd = fc;
                    c = hi - gr * (hi - lo); fc = at(c);
                } else {
                    lo = c; c = d; fc = fd;
                    d = lo + gr * (hi - lo); fd = at(d);
                }
            }
            double cand = 0.5 * (lo + hi), fcand = at(cand);
            for (double edge : {lo, hi}) {
                const double fe = at(edge);
                if (fe < fcand) {
                    cand = edge;
                    fcand = fe;
                }
            }
            if (fcand < fx) {
                x[ax] = cand;
                fx = fcand;
            }
        }
        if (!(fx < before - 1e-14 * std::fabs(before)))
            break;
    }

    res.argmin = map(x);
    res.value = fx;
    const ConstraintBox& box = map.box;
    for (int ax = 0; ax < 5; ++ax) {
        res.boundary_distance[ax] = std::min(x[ax], 1.0 - x[ax]);
        res.interior[ax] = res.boundary_distance[ax] > 10 * tol;
    }
    res.all_interior = std::all_of(res.interior.begin(), res.interior.end(), [](bool b) { return b; });
    const double K = cfg.K, lk = std::log(K);
    res.eps_K3 = res.argmin.eps * K * K * K;
    res.eps_ratio = res.argmin.eps / eps_star(res.argmin.d, cfg);
    res.d_deviation = K * res.argmin.d - lk + 0.5 * std::log(lk);
    res.a_rel = std::fabs(res.argmin.a) / box.a_max(res.argmin.eps);
    res.alpha_b_rel = std::fabs(res.argmin.alpha_b) / box.alpha_b_max;
    res.alpha_w_rel = std::fabs(res.argmin.alpha_w) / box.alpha_w_max;
    return res;
}

std::vector<Comparison> boundary_comparisons(const ReducedConfig& cfg)
{
    const ConstraintBox box = constraint_box(cfg);
    const double K = cfg.K, lk = std::log(K);
    const double d_mid = (lk - 0.5 * std::log(lk)) / K;
    auto clamp_eps = [&](double e) { return std::clamp(e, box.eps_lo, box.eps_hi); };
    // Minimum over eps in the box at a = alpha = 0.
    auto eps_min = [&](double d) {
        ReducedPoint A;
        A.d = d;
        A.eps = clamp_eps(eps_star(d, cfg));
        return psi_leading(A, cfg);
    };
    ReducedPoint ref;
    ref.d = d_mid;
    ref.eps = eps_star(d_mid, cfg);
    const double inner = psi_leading(ref, cfg);

    std::vector<Comparison> out;
    auto add = [&](const std::string& name, double interior, double boundary) {
        out.push_back({name, interior, boundary, boundary > interior});
    };
    ReducedPoint A = ref;
    A.eps = box.eps_lo;
    add("eps_lower", inner, psi_leading(A, cfg));
    A.eps = box.eps_hi;
    add("eps_upper", inner, psi_leading(A, cfg));
    add("d_lower", eps_min(d_mid), eps_min(box.d_lo));
    add("d_upper", eps_min(d_mid), eps_min(box.d_hi));
    A = ref;
    A.a = box.a_max(A.eps);
    add("a_boundary", inner, psi_leading(A, cfg));
    A = ref;
    A.alpha_b = box.alpha_b_max;
    add("alpha_b_boundary", inner, psi_leading(A, cfg));
    A = ref;
    A.alpha_w = box.alpha_w_max;
    add("alpha_w_boundary", inner, psi_leading(A, cfg));
    return out;
}

double j_reduced(double q6, const ReducedPoint& A, const ReducedConfig& cfg, PsiMode mode)
{
    return q6 / 3.0 + 2 * M_PI * psi(A, cfg, mode);
}

const ModelConstants& default_model_constants()
{
    static const ModelConstants mc = [] {
        ModelConstants c;
        c.m = 16;
        const CrownParams p = make_crown(c.m);
        const ProfileHandle q = u_star_profile(p);
        const RadialRoot root = radial_nodal_root(p, q, 1, p.xi[0], 1e-14, 1.0);
        c.xi = root.point;
        c.gnorm = norm(q.gradient(c.xi));
        c.cstar = c_star(q, c.xi, 1e-8);
        return c;
    }();
    return mc;
}

} // namespace necklace
